#include "mbmt/fixtures/sut.hpp"

#include <poll.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <iostream>

#include "mbmt/tioa/symbolic.hpp"

namespace mbmt::fixtures {

using tioa::SemState;
using zones::DelayInterval;

namespace {

const Rational kStep(1, 8);

Rational earliest(const DelayInterval& i) {
  if (i.lower_closed) return i.lower;
  const Rational c = i.lower + kStep;
  return i.contains(c) ? c : (i.lower + *i.upper) / 2;
}

Rational latest(const DelayInterval& i) {
  if (i.upper_closed) return *i.upper;
  const Rational c = *i.upper - kStep;
  return i.contains(c) ? c : (i.lower + *i.upper) / 2;
}

}  // namespace

std::string policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Eager: return "eager";
    case PolicyKind::Lazy: return "lazy";
    case PolicyKind::Random: return "random";
  }
  return "?";
}

std::optional<PolicyKind> parse_policy(std::string_view text) {
  if (text == "eager") return PolicyKind::Eager;
  if (text == "lazy") return PolicyKind::Lazy;
  if (text == "random") return PolicyKind::Random;
  return std::nullopt;
}

ModelSut::ModelSut(tioa::Tioa model, OutputPolicy policy)
    : model_(std::move(model)), policy_(policy), rng_(policy.seed),
      state_(tioa::initial_state(model_)) {
  replan();
}

void ModelSut::crash_on(std::string label, int code, std::string message) {
  crash_label_ = std::move(label);
  crash_code_ = code;
  crash_message_ = std::move(message);
}

std::vector<ModelSut::Window> ModelSut::windows() const {
  const auto space = tioa::ClockSpace::own(model_);
  const zones::Dbm inv = tioa::invariant_zone(model_, state_.location, space);
  std::vector<Window> out;
  const std::string& here = model_.locations[state_.location].id;
  for (const std::string& label : model_.outputs) {
    for (const tioa::Edge& e : model_.edges) {
      if (e.source != here || e.action != label) continue;
      zones::Federation f = tioa::enabled_zone(model_, e, state_.vars, space);
      f &= inv;
      for (const zones::Dbm& z : f.zones()) {
        DelayInterval d = z.delay_interval(state_.clocks);
        if (!d.empty) out.push_back({d, label});
      }
    }
  }
  return out;
}

std::optional<std::string> ModelSut::enabled_at(const Rational& d, bool random) {
  std::vector<std::string> labels;
  for (const Window& w : windows()) {
    if (w.delays.contains(d) &&
        std::find(labels.begin(), labels.end(), w.label) == labels.end()) {
      labels.push_back(w.label);
    }
  }
  if (labels.empty()) return std::nullopt;
  if (!random) {
    // Declaration order of the outputs.
    for (const std::string& o : model_.outputs) {
      if (std::find(labels.begin(), labels.end(), o) != labels.end()) return o;
    }
  }
  std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
  return labels[pick(rng_)];
}

void ModelSut::replan() {
  plan_.reset();
  const DelayInterval admissible = tioa::admissible_delays(model_, state_);
  deadline_ = admissible.upper;
  const std::vector<Window> ws = windows();
  if (ws.empty()) return;

  std::optional<Rational> at;
  switch (policy_.kind) {
    case PolicyKind::Eager:
      for (const Window& w : ws) {
        const Rational e = earliest(w.delays);
        if (!at || e < *at) at = e;
      }
      break;
    case PolicyKind::Lazy:
      if (!deadline_) return;
      for (const Window& w : ws) {
        const Rational l = latest(w.delays);
        if (!at || l > *at) at = l;
      }
      break;
    case PolicyKind::Random: {
      if (!deadline_ && std::bernoulli_distribution(0.5)(rng_)) return;
      Rational horizon(0);
      if (deadline_) {
        horizon = *deadline_;
      } else {
        for (const Window& w : ws) horizon = std::max(horizon, w.delays.lower);
        horizon += model_.max_clock_constant() + 1;
      }
      std::vector<Rational> grid;
      for (Rational d(0); d <= horizon; d += kStep) {
        for (const Window& w : ws) {
          if (w.delays.contains(d)) {
            grid.push_back(d);
            break;
          }
        }
      }
      if (grid.empty()) {
        for (const Window& w : ws) {
          const Rational e = earliest(w.delays);
          if (!at || e < *at) at = e;
        }
      } else {
        at = grid[std::uniform_int_distribution<std::size_t>(0, grid.size() - 1)(rng_)];
      }
      break;
    }
  }
  if (!at) return;
  if (auto label = enabled_at(*at, policy_.kind == PolicyKind::Random)) plan_.emplace(*at, *label);
}

std::optional<Rational> ModelSut::next_output_in() const {
  if (!plan_) return std::nullopt;
  return plan_->first;
}

std::optional<Rational> ModelSut::deadline_in() const { return deadline_; }

void ModelSut::advance(const Rational& d) {
  if (d <= 0) return;
  Rational step = d;
  if (deadline_) step = std::min(step, *deadline_);
  if (auto next = tioa::step_delay(model_, state_, step)) {
    state_ = std::move(*next);
  } else {
    // Open deadline: stop just short of it.
    state_ = *tioa::step_delay(model_, state_, std::max(Rational(0), step - kStep));
    step = std::max(Rational(0), step - kStep);
  }
  if (plan_) plan_->first -= step;
  if (deadline_) *deadline_ -= step;
}

std::optional<std::string> ModelSut::fire() {
  if (!plan_) return std::nullopt;
  const std::string label = plan_->second;
  if (crash_label_ && *crash_label_ == label) {
    terminated_ = true;
    exit_code_ = crash_code_;
    diagnostics_ += crash_message_;
    return std::nullopt;
  }
  auto next = tioa::step_action(model_, state_, label);
  if (!next) {
    diagnostics_ += "planned output " + label + " is not enabled\n";
    replan();
    return std::nullopt;
  }
  state_ = std::move(*next);
  replan();
  return label;
}

void ModelSut::input(const std::string& label) {
  if (!model_.is_input(label)) {
    diagnostics_ += "ignoring unknown input '" + label + "'\n";
    return;
  }
  if (auto next = tioa::step_action(model_, state_, label)) {
    state_ = std::move(*next);
    replan();
  }
}

void ModelSut::stop() { terminated_ = true; }

std::vector<std::string> ModelSut::on_line(const std::string& line) {
  if (terminated_ || line.empty()) return {};
  const std::string tag = "@delay ";
  if (!line.starts_with(tag)) {
    input(line);
    return {};
  }
  const auto d = parse_decimal(std::string_view(line).substr(tag.size()));
  if (!d || *d < 0) {
    diagnostics_ += "malformed grant '" + line + "'\n";
    return {};
  }
  if (plan_ && plan_->first < *d) {
    const Rational at = plan_->first;
    advance(at);
    std::vector<std::string> out{"@delayed " + to_decimal(at)};
    if (auto label = fire()) out.push_back(*label);
    return out;
  }
  if (tioa::step_delay(model_, state_, *d)) {
    advance(*d);
    return {"@delayed " + to_decimal(*d)};
  }
  // Time cannot reach the grant and nothing will be said: a timelock.
  const Rational before = deadline_.value_or(Rational(0));
  advance(before);
  const Rational reached = before - deadline_.value_or(Rational(0));
  stop();
  return {"@delayed " + to_decimal(reached)};
}

int serve_simulated(ModelSut& sut) {
  std::string line;
  while (!sut.terminated() && std::getline(std::cin, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    for (const std::string& reply : sut.on_line(line)) std::cout << reply << '\n';
    std::cout.flush();
  }
  std::cerr << sut.diagnostics();
  return sut.terminated() ? sut.exit_code() : 0;
}

int serve_real_time(ModelSut& sut, std::int64_t time_unit_ms) {
  using Clock = std::chrono::steady_clock;
  auto last = Clock::now();
  std::string buffer;
  auto units_since = [&](Clock::time_point t) {
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t - last).count();
    return Rational(ms, time_unit_ms);
  };
  while (!sut.terminated()) {
    std::optional<Rational> wait = sut.next_output_in();
    const bool output_due = wait.has_value();
    if (!wait) wait = sut.deadline_in();
    int timeout_ms = -1;
    if (wait) {
      timeout_ms = static_cast<int>(
          std::max<std::int64_t>(0, boost::rational_cast<std::int64_t>(*wait * time_unit_ms)));
    }
    pollfd fd{0, POLLIN, 0};
    const int ready = ::poll(&fd, 1, timeout_ms);
    const auto now = Clock::now();
    if (ready == 0) {
      sut.advance(*wait);
      last = now;
      if (output_due) {
        if (auto label = sut.fire()) {
          std::cout << *label << '\n';
          std::cout.flush();
        }
      } else {
        sut.stop();
      }
      continue;
    }
    Rational elapsed = units_since(now);
    if (wait) elapsed = std::min(elapsed, *wait);
    sut.advance(elapsed);
    last = now;
    char chunk[1024];
    const ssize_t n = ::read(0, chunk, sizeof chunk);
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t pos;
    while ((pos = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, pos);
      buffer.erase(0, pos + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && !line.starts_with("@")) sut.input(line);
    }
  }
  std::cerr << sut.diagnostics();
  return sut.terminated() ? sut.exit_code() : 0;
}

}  // namespace mbmt::fixtures
