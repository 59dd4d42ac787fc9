#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "mbmt/driver/channel.hpp"
#include "mbmt/zones/rational.hpp"

namespace mbmt::driver {

struct TimeMode {
  bool simulated = true;
  std::int64_t time_unit_ms = 100;  // real mode only

  static TimeMode simulation() { return {true, 100}; }
  static TimeMode real(std::int64_t unit_ms) { return {false, unit_ms}; }

  bool operator==(const TimeMode&) const = default;
};

class ProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// What happened during one delay grant: time passed, then possibly one
// output or the end of the SUT's output stream.
struct GrantOutcome {
  Rational elapsed{0};
  std::optional<std::string> output;
  bool terminated = false;
};

// The driver's side of the wire protocol.
//
// Simulated time: the driver writes `@delay d`, the SUT answers `@delayed e`
// with 0 <= e <= d, followed by exactly one output line iff e < d (or by
// the end of its stream when it stopped). Real time: the driver waits up to
// d time units of wall clock, watching for output lines.
class SutSession {
 public:
  SutSession(LineChannel& channel, TimeMode mode);

  // Ignored once the SUT has terminated.
  void send_input(const std::string& label);
  GrantOutcome grant_delay(const Rational& d);

  bool terminated() const { return terminated_; }
  LineChannel& channel() { return channel_; }
  const TimeMode& mode() const { return mode_; }

 private:
  GrantOutcome grant_simulated(const Rational& d);
  GrantOutcome grant_real(const Rational& d);
  Rational units_between(SteadyClock::time_point from, SteadyClock::time_point to) const;

  LineChannel& channel_;
  TimeMode mode_;
  bool terminated_ = false;
  SteadyClock::time_point sync_;
};

}  // namespace mbmt::driver
