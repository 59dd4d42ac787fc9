#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace mbmt::driver {

using SteadyClock = std::chrono::steady_clock;

struct ReadResult {
  enum class Status { Line, Eof, Timeout };
  Status status = Status::Eof;
  std::string line;
  SteadyClock::time_point at{};
};

// Line-oriented, bidirectional connection to a SUT.
class LineChannel {
 public:
  virtual ~LineChannel() = default;

  // Writes one LF-terminated line. False once the peer stopped reading.
  virtual bool send(const std::string& line) = 0;
  // Blocks for the next line, or until `deadline` when one is given.
  virtual ReadResult read(std::optional<SteadyClock::time_point> deadline) = 0;
  // Exit status once the peer has closed its output; nullopt before that or
  // when it died from a signal (then crashed() is true).
  virtual std::optional<int> exit_code() = 0;
  virtual bool crashed() = 0;
  // Everything the peer wrote to its error stream so far.
  virtual std::string diagnostics() = 0;
};

// Runs `/bin/sh -c command` with piped standard streams. A watcher thread
// timestamps each output line as it is read; another collects stderr.
class ProcessChannel : public LineChannel {
 public:
  explicit ProcessChannel(const std::string& command);
  ~ProcessChannel() override;

  ProcessChannel(const ProcessChannel&) = delete;
  ProcessChannel& operator=(const ProcessChannel&) = delete;

  bool send(const std::string& line) override;
  ReadResult read(std::optional<SteadyClock::time_point> deadline) override;
  std::optional<int> exit_code() override;
  bool crashed() override;
  std::string diagnostics() override;

 private:
  void reap(bool block);

  int pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  int err_fd_ = -1;
  std::thread out_watcher_;
  std::thread err_watcher_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<ReadResult> lines_;
  bool eof_ = false;
  std::string stderr_;
  bool reaped_ = false;
  int status_ = 0;
};

// The SUT side of an in-process connection.
class LineEndpoint {
 public:
  virtual ~LineEndpoint() = default;
  virtual std::vector<std::string> on_line(const std::string& line) = 0;
  // True once the endpoint has stopped (it will not answer again).
  virtual bool terminated() const = 0;
  virtual int exit_code() const { return 0; }
  virtual std::string diagnostics() const { return {}; }
};

// In-process channel for simulated time: replies are produced synchronously
// by the endpoint, so read() never has to wait.
class LoopbackChannel : public LineChannel {
 public:
  explicit LoopbackChannel(std::unique_ptr<LineEndpoint> endpoint);

  bool send(const std::string& line) override;
  ReadResult read(std::optional<SteadyClock::time_point> deadline) override;
  std::optional<int> exit_code() override;
  bool crashed() override;
  std::string diagnostics() override;

 private:
  std::unique_ptr<LineEndpoint> endpoint_;
  std::deque<std::string> pending_;
};

}  // namespace mbmt::driver
