#include "mbmt/driver/channel.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <stdexcept>

namespace mbmt::driver {

namespace {

void ignore_sigpipe() {
  static const bool once = [] {
    ::signal(SIGPIPE, SIG_IGN);
    return true;
  }();
  (void)once;
}

bool write_all(int fd, const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    done += static_cast<std::size_t>(n);
  }
  return true;
}

}  // namespace

ProcessChannel::ProcessChannel(const std::string& command) {
  ignore_sigpipe();
  int in[2];
  int out[2];
  int err[2];
  if (::pipe2(in, O_CLOEXEC) != 0 || ::pipe2(out, O_CLOEXEC) != 0 || ::pipe2(err, O_CLOEXEC) != 0) {
    throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
  }
  pid_ = ::fork();
  if (pid_ < 0) throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
  if (pid_ == 0) {
    ::dup2(in[0], 0);
    ::dup2(out[1], 1);
    ::dup2(err[1], 2);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  ::close(err[1]);
  in_fd_ = in[1];
  out_fd_ = out[0];
  err_fd_ = err[0];

  out_watcher_ = std::thread([this] {
    std::string buffer;
    char chunk[4096];
    while (true) {
      const ssize_t n = ::read(out_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      const auto now = SteadyClock::now();
      if (n <= 0) break;
      buffer.append(chunk, static_cast<std::size_t>(n));
      std::size_t pos;
      std::lock_guard lock(mu_);
      while ((pos = buffer.find('\n')) != std::string::npos) {
        std::string line = buffer.substr(0, pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines_.push_back({ReadResult::Status::Line, std::move(line), now});
        buffer.erase(0, pos + 1);
      }
      cv_.notify_all();
    }
    std::lock_guard lock(mu_);
    lines_.push_back({ReadResult::Status::Eof, {}, SteadyClock::now()});
    eof_ = true;
    cv_.notify_all();
  });
  err_watcher_ = std::thread([this] {
    char chunk[4096];
    while (true) {
      const ssize_t n = ::read(err_fd_, chunk, sizeof chunk);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) break;
      std::lock_guard lock(mu_);
      stderr_.append(chunk, static_cast<std::size_t>(n));
    }
  });
}

ProcessChannel::~ProcessChannel() {
  if (in_fd_ >= 0) ::close(in_fd_);
  {
    std::unique_lock lock(mu_);
    cv_.wait_for(lock, std::chrono::milliseconds(200), [this] { return eof_; });
  }
  if (!reaped_) {
    ::kill(pid_, SIGTERM);
    reap(true);
  }
  out_watcher_.join();
  err_watcher_.join();
  ::close(out_fd_);
  ::close(err_fd_);
}

bool ProcessChannel::send(const std::string& line) {
  if (in_fd_ < 0) return false;
  return write_all(in_fd_, line + "\n");
}

ReadResult ProcessChannel::read(std::optional<SteadyClock::time_point> deadline) {
  std::unique_lock lock(mu_);
  auto ready = [this] { return !lines_.empty(); };
  if (deadline) {
    if (!cv_.wait_until(lock, *deadline, ready)) return {ReadResult::Status::Timeout, {}, *deadline};
  } else {
    cv_.wait(lock, ready);
  }
  ReadResult r = lines_.front();
  // Keep the end-of-stream marker for later reads.
  if (r.status != ReadResult::Status::Eof) lines_.pop_front();
  return r;
}

void ProcessChannel::reap(bool block) {
  if (reaped_) return;
  int status = 0;
  const pid_t r = ::waitpid(pid_, &status, block ? 0 : WNOHANG);
  if (r == pid_) {
    reaped_ = true;
    status_ = status;
  }
}

std::optional<int> ProcessChannel::exit_code() {
  {
    std::lock_guard lock(mu_);
    if (!eof_) return std::nullopt;
  }
  reap(true);
  if (WIFEXITED(status_)) return WEXITSTATUS(status_);
  return std::nullopt;
}

bool ProcessChannel::crashed() {
  {
    std::lock_guard lock(mu_);
    if (!eof_) return false;
  }
  reap(true);
  return WIFSIGNALED(status_) || (WIFEXITED(status_) && WEXITSTATUS(status_) != 0);
}

std::string ProcessChannel::diagnostics() {
  // The stderr watcher may still be draining; give it a moment after exit.
  if (reaped_) {
    for (int i = 0; i < 20; ++i) {
      {
        std::lock_guard lock(mu_);
        if (!stderr_.empty()) break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  std::lock_guard lock(mu_);
  return stderr_;
}

LoopbackChannel::LoopbackChannel(std::unique_ptr<LineEndpoint> endpoint)
    : endpoint_(std::move(endpoint)) {}

bool LoopbackChannel::send(const std::string& line) {
  if (endpoint_->terminated()) return false;
  for (std::string& reply : endpoint_->on_line(line)) pending_.push_back(std::move(reply));
  return true;
}

ReadResult LoopbackChannel::read(std::optional<SteadyClock::time_point> deadline) {
  const auto now = SteadyClock::now();
  if (!pending_.empty()) {
    ReadResult r{ReadResult::Status::Line, std::move(pending_.front()), now};
    pending_.pop_front();
    return r;
  }
  if (endpoint_->terminated()) return {ReadResult::Status::Eof, {}, now};
  if (deadline) return {ReadResult::Status::Timeout, {}, *deadline};
  throw std::logic_error("loopback read would block forever");
}

std::optional<int> LoopbackChannel::exit_code() {
  if (!endpoint_->terminated()) return std::nullopt;
  return endpoint_->exit_code();
}

bool LoopbackChannel::crashed() { return endpoint_->terminated() && endpoint_->exit_code() != 0; }

std::string LoopbackChannel::diagnostics() { return endpoint_->diagnostics(); }

}  // namespace mbmt::driver
