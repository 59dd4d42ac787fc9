#include "mbmt/driver/session.hpp"

#include <algorithm>

namespace mbmt::driver {

SutSession::SutSession(LineChannel& channel, TimeMode mode)
    : channel_(channel), mode_(mode), sync_(SteadyClock::now()) {
  if (mode_.time_unit_ms < 1) throw std::invalid_argument("time unit must be at least 1 ms");
}

void SutSession::send_input(const std::string& label) {
  if (terminated_) return;
  if (!channel_.send(label)) terminated_ = true;
  sync_ = SteadyClock::now();
}

GrantOutcome SutSession::grant_delay(const Rational& d) {
  if (d <= 0) throw std::invalid_argument("delay grant must be positive");
  if (terminated_) return {d, std::nullopt, true};
  return mode_.simulated ? grant_simulated(d) : grant_real(d);
}

GrantOutcome SutSession::grant_simulated(const Rational& d) {
  if (!channel_.send("@delay " + to_decimal(d))) {
    terminated_ = true;
    return {0, std::nullopt, true};
  }
  ReadResult r = channel_.read(std::nullopt);
  if (r.status == ReadResult::Status::Eof) {
    terminated_ = true;
    return {0, std::nullopt, true};
  }
  const std::string tag = "@delayed ";
  if (!r.line.starts_with(tag)) throw ProtocolError("expected '@delayed', got '" + r.line + "'");
  const auto e = parse_decimal(std::string_view(r.line).substr(tag.size()));
  if (!e) throw ProtocolError("malformed delay in '" + r.line + "'");
  if (*e < 0 || *e > d) {
    throw ProtocolError("SUT reported " + to_decimal(*e) + " for a grant of " + to_decimal(d));
  }
  GrantOutcome out{*e, std::nullopt, false};
  if (*e == d) return out;
  r = channel_.read(std::nullopt);
  if (r.status == ReadResult::Status::Eof) {
    terminated_ = true;
    out.terminated = true;
    return out;
  }
  if (r.line.empty() || r.line.starts_with("@")) {
    throw ProtocolError("expected an output after a short delay, got '" + r.line + "'");
  }
  out.output = r.line;
  return out;
}

Rational SutSession::units_between(SteadyClock::time_point from, SteadyClock::time_point to) const {
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(to - from).count();
  return Rational(std::max<std::int64_t>(ms, 0), mode_.time_unit_ms);
}

GrantOutcome SutSession::grant_real(const Rational& d) {
  const auto span = std::chrono::microseconds(
      boost::rational_cast<std::int64_t>(d * mode_.time_unit_ms * 1000));
  const auto deadline = sync_ + span;
  const ReadResult r = channel_.read(deadline);
  switch (r.status) {
    case ReadResult::Status::Timeout:
      sync_ = deadline;
      return {d, std::nullopt, false};
    case ReadResult::Status::Eof: {
      terminated_ = true;
      const Rational e = std::min(d, units_between(sync_, r.at));
      sync_ = r.at;
      return {e, std::nullopt, true};
    }
    case ReadResult::Status::Line: {
      if (r.line.empty() || r.line.starts_with("@")) {
        throw ProtocolError("unexpected line '" + r.line + "' in real-time mode");
      }
      const Rational e = std::min(d, units_between(sync_, r.at));
      sync_ = r.at;
      return {e, r.line, false};
    }
  }
  return {d, std::nullopt, false};
}

}  // namespace mbmt::driver
