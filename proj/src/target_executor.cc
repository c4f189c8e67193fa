// Copyright 2026 The crashrefine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crashrefine/target_executor.h"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/syscall.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cstring>
#include <mutex>
#include <system_error>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "text_util.h"

extern char** environ;

namespace crashrefine {

std::set<int> DefaultCrashSignals() {
  return {SIGSEGV, SIGABRT, SIGILL, SIGBUS, SIGFPE};
}

absl::StatusOr<int> ParseSignal(std::string_view name) {
  int number = 0;
  if (absl::SimpleAtoi(std::string(name), &number)) {
    if (number <= 0 || number >= NSIG) {
      return absl::InvalidArgumentError(
          absl::StrCat("signal number out of range: ", std::string(name)));
    }
    return number;
  }
  std::string upper = absl::AsciiStrToUpper(std::string(name));
  std::string_view bare = upper;
  if (bare.substr(0, 3) == "SIG") bare.remove_prefix(3);
  for (int sig = 1; sig < NSIG; ++sig) {
    const char* abbrev = sigabbrev_np(sig);
    if (abbrev != nullptr && bare == abbrev) return sig;
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown signal: ", std::string(name)));
}

std::string SignalName(int signal) {
  const char* abbrev = sigabbrev_np(signal);
  if (abbrev == nullptr) return absl::StrCat("SIG", signal);
  return absl::StrCat("SIG", abbrev);
}

absl::StatusOr<std::vector<std::string>> SplitCommandLine(
    std::string_view command) {
  std::vector<std::string> args;
  std::string current;
  bool in_arg = false;
  char quote = 0;
  for (size_t i = 0; i < command.size(); ++i) {
    const char c = command[i];
    if (quote == '\'') {
      if (c == '\'') {
        quote = 0;
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == '\\') {
      if (i + 1 >= command.size()) {
        return absl::InvalidArgumentError("trailing backslash in command");
      }
      const char next = command[++i];
      // Inside double quotes a backslash only escapes the characters sh
      // treats specially there.
      if (quote == '"' && next != '"' && next != '\\' && next != '$' &&
          next != '`') {
        current.push_back('\\');
      }
      current.push_back(next);
      in_arg = true;
      continue;
    }
    if (quote == '"') {
      if (c == '"') {
        quote = 0;
      } else {
        current.push_back(c);
      }
      continue;
    }
    if (c == '\'' || c == '"') {
      quote = c;
      in_arg = true;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (in_arg) {
        args.push_back(std::move(current));
        current.clear();
        in_arg = false;
      }
    } else {
      current.push_back(c);
      in_arg = true;
    }
  }
  if (quote != 0) {
    return absl::InvalidArgumentError("unterminated quote in command");
  }
  if (in_arg) args.push_back(std::move(current));
  return args;
}

absl::StatusOr<TargetSpec> TargetSpec::Create(TargetConfig config) {
  if (config.command.empty() || config.command[0].empty()) {
    return absl::InvalidArgumentError("target command is empty");
  }
  if (config.timeout.count() < 1) {
    return absl::InvalidArgumentError("timeout must be at least 1 ms");
  }
  size_t placeholders = 0;
  for (const std::string& arg : config.command) {
    for (size_t pos = arg.find(kInputPlaceholder); pos != std::string::npos;
         pos = arg.find(kInputPlaceholder, pos + kInputPlaceholder.size())) {
      ++placeholders;
    }
  }
  if (placeholders > 1) {
    return absl::InvalidArgumentError(
        "target command has more than one @@ placeholder");
  }
  // A relative path to the binary is resolved now so a working-directory
  // change does not alter which program runs.
  std::string& program = config.command[0];
  if (program.find('/') != std::string::npos && program[0] != '/') {
    std::error_code ec;
    program = std::filesystem::absolute(program, ec).string();
  }

  TargetSpec spec;
  if (config.crash_token_pattern.has_value()) {
    try {
      spec.token_regex_ = std::make_shared<const std::regex>(
          *config.crash_token_pattern, std::regex::ECMAScript);
    } catch (const std::regex_error& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid crash token pattern: ", e.what()));
    }
  }
  spec.uses_placeholder_ = placeholders == 1;
  spec.config_ = std::make_shared<const TargetConfig>(std::move(config));
  return spec;
}

std::string_view OutcomeKindName(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kPass:
      return "pass";
    case OutcomeKind::kCrash:
      return "crash";
    case OutcomeKind::kHang:
      return "hang";
    case OutcomeKind::kSetupError:
      return "setup-error";
  }
  return "unknown";
}

std::string CrashFingerprint::ToString() const {
  std::vector<std::string> parts;
  if (signal.has_value()) parts.push_back(SignalName(*signal));
  if (matched_token.has_value()) {
    parts.push_back(absl::StrCat("token=", *matched_token));
  }
  if (exit_code.has_value()) parts.push_back(absl::StrCat("exit=", *exit_code));
  if (parts.empty()) return "{}";
  return absl::StrCat("{", absl::StrJoin(parts, ", "), "}");
}

std::optional<CrashFingerprint> ExecutionOutcome::Fingerprint() const {
  if (kind != OutcomeKind::kCrash) return std::nullopt;
  CrashFingerprint fp;
  fp.signal = signal;
  fp.matched_token = matched_token;
  if (matched_token.has_value() && !signal.has_value()) fp.exit_code = exit_code;
  return fp;
}

bool SameCrash(const ExecutionOutcome& a, const ExecutionOutcome& b) {
  if (a.kind != OutcomeKind::kCrash || b.kind != OutcomeKind::kCrash) {
    return false;
  }
  return a.Fingerprint() == b.Fingerprint();
}

namespace {

class UniqueFd {
 public:
  UniqueFd() = default;
  explicit UniqueFd(int fd) : fd_(fd) {}
  UniqueFd(UniqueFd&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}
  UniqueFd& operator=(UniqueFd&& other) noexcept {
    if (this != &other) {
      Reset();
      fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
  }
  ~UniqueFd() { Reset(); }

  int get() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  void Reset() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

 private:
  int fd_ = -1;
};

// Removes the file on destruction.
class TempInputFile {
 public:
  TempInputFile() = default;
  TempInputFile(const TempInputFile&) = delete;
  TempInputFile& operator=(const TempInputFile&) = delete;
  ~TempInputFile() {
    if (!path_.empty()) ::unlink(path_.c_str());
  }

  absl::Status Create(std::string_view contents) {
    std::error_code ec;
    std::filesystem::path dir = std::filesystem::temp_directory_path(ec);
    if (ec) dir = "/tmp";
    std::string templ = (dir / "crashrefine-input-XXXXXX").string();
    UniqueFd fd(::mkostemp(templ.data(), O_CLOEXEC));
    if (!fd.valid()) {
      return absl::InternalError(
          absl::StrCat("mkstemp failed: ", std::strerror(errno)));
    }
    path_ = templ;
    size_t written = 0;
    while (written < contents.size()) {
      const ssize_t n = ::write(fd.get(), contents.data() + written,
                                contents.size() - written);
      if (n < 0) {
        if (errno == EINTR) continue;
        return absl::InternalError(
            absl::StrCat("writing input file failed: ", std::strerror(errno)));
      }
      written += static_cast<size_t>(n);
    }
    return absl::OkStatus();
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct Pipe {
  UniqueFd read;
  UniqueFd write;
};

absl::StatusOr<Pipe> MakePipe() {
  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) {
    return absl::InternalError(
        absl::StrCat("pipe2 failed: ", std::strerror(errno)));
  }
  return Pipe{UniqueFd(fds[0]), UniqueFd(fds[1])};
}

void SetNonBlocking(int fd) {
  const int flags = ::fcntl(fd, F_GETFL);
  ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
}

uint64_t Fnv1a(std::string_view data) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::vector<std::string> BuildEnvironment(
    const std::map<std::string, std::string>& overrides) {
  std::map<std::string, std::string> merged;
  for (char** e = environ; e != nullptr && *e != nullptr; ++e) {
    std::string_view entry(*e);
    const size_t eq = entry.find('=');
    if (eq == std::string_view::npos) continue;
    merged.emplace(std::string(entry.substr(0, eq)),
                   std::string(entry.substr(eq + 1)));
  }
  for (const auto& [key, value] : overrides) merged[key] = value;
  std::vector<std::string> out;
  out.reserve(merged.size());
  for (const auto& [key, value] : merged) out.push_back(key + "=" + value);
  return out;
}

std::vector<char*> ToCharPointers(std::vector<std::string>& strings) {
  std::vector<char*> out;
  out.reserve(strings.size() + 1);
  for (std::string& s : strings) out.push_back(s.data());
  out.push_back(nullptr);
  return out;
}

void IgnoreSigpipeOnce() {
  static std::once_flag once;
  std::call_once(once, [] { ::signal(SIGPIPE, SIG_IGN); });
}

ExecutionOutcome SetupFailure(std::string message) {
  ExecutionOutcome outcome;
  outcome.kind = OutcomeKind::kSetupError;
  outcome.setup_error = std::move(message);
  return outcome;
}

class SpawnResources {
 public:
  SpawnResources() {
    ::posix_spawn_file_actions_init(&actions_);
    ::posix_spawnattr_init(&attr_);
  }
  ~SpawnResources() {
    ::posix_spawn_file_actions_destroy(&actions_);
    ::posix_spawnattr_destroy(&attr_);
  }
  posix_spawn_file_actions_t* actions() { return &actions_; }
  posix_spawnattr_t* attr() { return &attr_; }

 private:
  posix_spawn_file_actions_t actions_;
  posix_spawnattr_t attr_;
};

}  // namespace

ExecutionOutcome Execute(const TargetSpec& target, const ByteInput& input) {
  IgnoreSigpipeOnce();
  const TargetConfig& config = target.config();
  const auto start = std::chrono::steady_clock::now();

  TempInputFile temp_file;
  std::vector<std::string> argv_strings = config.command;
  if (target.uses_placeholder()) {
    if (absl::Status s = temp_file.Create(input.view()); !s.ok()) {
      return SetupFailure(std::string(s.message()));
    }
    for (std::string& arg : argv_strings) {
      const size_t pos = arg.find(kInputPlaceholder);
      if (pos != std::string::npos) {
        arg.replace(pos, kInputPlaceholder.size(), temp_file.path());
      }
    }
  }
  std::vector<char*> argv = ToCharPointers(argv_strings);
  std::vector<std::string> env_strings = BuildEnvironment(config.env);
  std::vector<char*> envp = ToCharPointers(env_strings);

  absl::StatusOr<Pipe> err_pipe = MakePipe();
  if (!err_pipe.ok()) return SetupFailure(std::string(err_pipe.status().message()));
  Pipe in_pipe;
  if (!target.uses_placeholder()) {
    absl::StatusOr<Pipe> p = MakePipe();
    if (!p.ok()) return SetupFailure(std::string(p.status().message()));
    in_pipe = *std::move(p);
  }

  SpawnResources spawn;
  if (in_pipe.read.valid()) {
    ::posix_spawn_file_actions_adddup2(spawn.actions(), in_pipe.read.get(), 0);
  } else {
    ::posix_spawn_file_actions_addopen(spawn.actions(), 0, "/dev/null",
                                       O_RDONLY, 0);
  }
  ::posix_spawn_file_actions_addopen(spawn.actions(), 1, "/dev/null", O_WRONLY,
                                     0);
  ::posix_spawn_file_actions_adddup2(spawn.actions(), err_pipe->write.get(), 2);
  if (config.working_dir.has_value()) {
    ::posix_spawn_file_actions_addchdir_np(spawn.actions(),
                                           config.working_dir->c_str());
  }
  sigset_t all_signals;
  sigset_t no_signals;
  sigfillset(&all_signals);
  sigemptyset(&no_signals);
  ::posix_spawnattr_setflags(
      spawn.attr(),
      POSIX_SPAWN_SETPGROUP | POSIX_SPAWN_SETSIGDEF | POSIX_SPAWN_SETSIGMASK);
  ::posix_spawnattr_setpgroup(spawn.attr(), 0);
  ::posix_spawnattr_setsigdefault(spawn.attr(), &all_signals);
  ::posix_spawnattr_setsigmask(spawn.attr(), &no_signals);

  pid_t pid = -1;
  const int spawn_error = ::posix_spawnp(&pid, argv[0], spawn.actions(),
                                         spawn.attr(), argv.data(), envp.data());
  err_pipe->write.Reset();
  in_pipe.read.Reset();
  if (spawn_error != 0) {
    return SetupFailure(absl::StrCat("cannot launch ", argv_strings[0], ": ",
                                     std::strerror(spawn_error)));
  }

  UniqueFd pidfd(static_cast<int>(::syscall(SYS_pidfd_open, pid, 0)));
  UniqueFd err_read = std::move(err_pipe->read);
  UniqueFd in_write = std::move(in_pipe.write);
  SetNonBlocking(err_read.get());
  if (in_write.valid()) SetNonBlocking(in_write.get());

  std::string captured;
  size_t stdin_written = 0;
  const std::string_view stdin_data = input.view();
  if (in_write.valid() && stdin_data.empty()) in_write.Reset();

  auto drain_stderr = [&]() {
    char buf[65536];
    while (err_read.valid()) {
      const ssize_t n = ::read(err_read.get(), buf, sizeof(buf));
      if (n > 0) {
        const size_t room = kStderrCaptureLimit - captured.size();
        captured.append(buf, std::min(room, static_cast<size_t>(n)));
        continue;
      }
      if (n < 0 && errno == EINTR) continue;
      if (n < 0 && errno == EAGAIN) break;
      err_read.Reset();
    }
  };

  const auto deadline = start + config.timeout;
  int wait_status = 0;
  bool exited = false;
  bool timed_out = false;
  while (!exited) {
    const auto now = std::chrono::steady_clock::now();
    if (now >= deadline) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      while (::waitpid(pid, &wait_status, 0) < 0 && errno == EINTR) {
      }
      timed_out = true;
      break;
    }
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                         deadline - now).count() + 1;
    if (!pidfd.valid()) remaining = std::min<int64_t>(remaining, 5);

    pollfd fds[3];
    nfds_t nfds = 0;
    int err_idx = -1;
    int in_idx = -1;
    if (err_read.valid()) {
      err_idx = static_cast<int>(nfds);
      fds[nfds++] = {err_read.get(), POLLIN, 0};
    }
    if (in_write.valid()) {
      in_idx = static_cast<int>(nfds);
      fds[nfds++] = {in_write.get(), POLLOUT, 0};
    }
    if (pidfd.valid()) fds[nfds++] = {pidfd.get(), POLLIN, 0};
    const int ready = ::poll(fds, nfds, static_cast<int>(remaining));
    if (ready < 0 && errno != EINTR) break;

    if (err_idx >= 0 && fds[err_idx].revents != 0) drain_stderr();
    if (in_idx >= 0 && fds[in_idx].revents != 0) {
      const ssize_t n =
          ::write(in_write.get(), stdin_data.data() + stdin_written,
                  stdin_data.size() - stdin_written);
      if (n > 0) {
        stdin_written += static_cast<size_t>(n);
        if (stdin_written == stdin_data.size()) in_write.Reset();
      } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
        in_write.Reset();
      }
    }
    const pid_t w = ::waitpid(pid, &wait_status, WNOHANG);
    if (w == pid) exited = true;
  }
  if (!timed_out) drain_stderr();
  in_write.Reset();
  err_read.Reset();

  ExecutionOutcome outcome;
  outcome.duration_millis =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - start)
          .count();
  outcome.stderr_digest = Fnv1a(captured);
  if (timed_out) {
    outcome.kind = OutcomeKind::kHang;
    return outcome;
  }
  if (!exited) {
    return SetupFailure(
        absl::StrCat("lost track of target process: ", std::strerror(errno)));
  }
  bool crash = false;
  if (WIFSIGNALED(wait_status)) {
    outcome.signal = WTERMSIG(wait_status);
    crash = config.crash_signals.contains(*outcome.signal);
  } else if (WIFEXITED(wait_status)) {
    outcome.exit_code = WEXITSTATUS(wait_status);
  }
  if (const std::regex* re = target.crash_token_regex(); re != nullptr) {
    std::match_results<std::string::const_iterator> match;
    if (std::regex_search(captured.cbegin(), captured.cend(), match, *re)) {
      outcome.matched_token =
          std::string(internal::TrimAscii(match.str()));
      crash = true;
    }
  }
  outcome.kind = crash ? OutcomeKind::kCrash : OutcomeKind::kPass;
  return outcome;
}

namespace {

absl::Status CheckCrashed(const ExecutionOutcome& outcome) {
  if (outcome.kind == OutcomeKind::kSetupError) {
    return absl::FailedPreconditionError(
        absl::StrCat("target could not be launched: ", outcome.setup_error));
  }
  if (outcome.kind != OutcomeKind::kCrash) {
    return absl::FailedPreconditionError(
        absl::StrCat("crashing input did not crash (outcome: ",
                     std::string(OutcomeKindName(outcome.kind)), ")"));
  }
  return absl::OkStatus();
}

absl::Status CheckReproduced(const ExecutionOutcome& first,
                             const ExecutionOutcome& again) {
  if (SameCrash(first, again)) return absl::OkStatus();
  const std::string second = again.kind == OutcomeKind::kCrash
                                 ? again.Fingerprint()->ToString()
                                 : std::string(OutcomeKindName(again.kind));
  return absl::AbortedError(
      absl::StrCat("nondeterministic target: crashing input gave ",
                   first.Fingerprint()->ToString(), " then ", second));
}

}  // namespace

absl::StatusOr<CrashFingerprint> ClassifyCrashing(const CrashOracle& oracle,
                                                  const ByteInput& crashing,
                                                  size_t* executions) {
  const ExecutionOutcome first = oracle.Run(crashing);
  ++*executions;
  if (absl::Status s = CheckCrashed(first); !s.ok()) return s;
  const ExecutionOutcome again = oracle.Run(crashing);
  ++*executions;
  if (absl::Status s = CheckReproduced(first, again); !s.ok()) return s;
  return *first.Fingerprint();
}

absl::StatusOr<BaselineClassification> ClassifyBaseline(
    const CrashOracle& oracle, const ByteInput& crashing,
    const ByteInput& passing) {
  BaselineClassification result;
  result.crashing_outcome = oracle.Run(crashing);
  ++result.executions;
  if (absl::Status s = CheckCrashed(result.crashing_outcome); !s.ok()) {
    return s;
  }
  result.passing_outcome = oracle.Run(passing);
  ++result.executions;
  if (result.passing_outcome.kind != OutcomeKind::kPass) {
    std::string detail(OutcomeKindName(result.passing_outcome.kind));
    if (auto fp = result.passing_outcome.Fingerprint(); fp.has_value()) {
      absl::StrAppend(&detail, " ", fp->ToString());
    }
    return absl::FailedPreconditionError(
        absl::StrCat("passing input did not pass (outcome: ", detail, ")"));
  }
  const ExecutionOutcome again = oracle.Run(crashing);
  ++result.executions;
  if (absl::Status s = CheckReproduced(result.crashing_outcome, again);
      !s.ok()) {
    return s;
  }
  result.fingerprint = *result.crashing_outcome.Fingerprint();
  return result;
}

}  // namespace crashrefine
