#include "spokelab/process.hpp"

#include <algorithm>
#include <sstream>

namespace spokelab {

void TrackingFeed::publish(Nat x, Nat stage, Nat value) {
  if (hist_.size() <= x) hist_.resize(x + 1);
  auto& row = hist_[x];
  if (row.size() <= stage) row.resize(stage + 1);
  row[stage] = value;
}

std::optional<Nat> TrackingFeed::value(Nat x, Nat stage) const {
  if (x >= hist_.size()) return std::nullopt;
  const auto& row = hist_[x];
  if (row.empty()) return std::nullopt;
  // Values persist between publications: take the latest published stage <= s.
  std::optional<Nat> v;
  for (Nat t = 0; t <= stage && t < row.size(); ++t)
    if (row[t]) v = row[t];
  return v;
}

namespace {

class ConstantProcess final : public StepProcess {
 public:
  ConstantProcess(Nat index, Nat value) : StepProcess(index), value_(value) {}
  std::string describe() const override {
    std::ostringstream os;
    os << "constant " << value_;
    return os.str();
  }
  std::optional<Nat> approx_value(Nat, Nat) const override { return value_; }
  std::optional<Nat> unary_value(Nat) const override { return value_; }

 private:
  Nat value_;
};

class StaircaseDownProcess final : public StepProcess {
 public:
  StaircaseDownProcess(Nat index, Nat start, Nat per_x)
      : StepProcess(index), start_(start), per_x_(per_x) {}
  std::string describe() const override {
    std::ostringstream os;
    os << "staircase-down " << start_ << " " << per_x_;
    return os.str();
  }
  std::optional<Nat> approx_value(Nat x, Nat t) const override {
    const Nat init = start_ + per_x_ * x;
    return t >= init ? 0 : init - t;
  }
  std::optional<Nat> unary_value(Nat z) const override { return start_ + per_x_ * z; }

 private:
  Nat start_, per_x_;
};

class StaircaseUpProcess final : public StepProcess {
 public:
  StaircaseUpProcess(Nat index, Nat cap) : StepProcess(index), cap_(cap) {}
  std::string describe() const override {
    std::ostringstream os;
    os << "staircase-up " << cap_;
    return os.str();
  }
  std::optional<Nat> approx_value(Nat, Nat t) const override { return std::min(cap_, t); }
  std::optional<Nat> unary_value(Nat z) const override { return std::min(cap_, z); }

 private:
  Nat cap_;
};

class DelayedConvergeProcess final : public StepProcess {
 public:
  DelayedConvergeProcess(Nat index, Nat delay, Nat value)
      : StepProcess(index), delay_(delay), value_(value) {}
  std::string describe() const override {
    std::ostringstream os;
    os << "delayed-converge " << delay_ << " " << value_;
    return os.str();
  }
  std::optional<Nat> approx_value(Nat, Nat) const override { return value_; }
  Nat visible_at(Nat, Nat t) const override { return delay_ + t; }
  std::optional<Nat> unary_value(Nat) const override { return value_; }
  Nat unary_visible_at(Nat) const override { return delay_; }

 private:
  Nat delay_, value_;
};

class TrackingProcess final : public StepProcess {
 public:
  TrackingProcess(Nat index, Nat lag) : StepProcess(index), lag_(lag) {}
  std::string describe() const override {
    std::ostringstream os;
    os << "tracking " << lag_;
    return os.str();
  }
  std::optional<Nat> approx_value(Nat x, Nat t) const override {
    if (!feed_) return std::nullopt;
    return feed_->value(x, t > lag_ ? t - lag_ : 0);
  }
  std::optional<Nat> unary_value(Nat) const override { return std::nullopt; }
  void bind_feed(const TrackingFeed* feed) override { feed_ = feed; }

 private:
  Nat lag_;
  const TrackingFeed* feed_ = nullptr;
};

class DivergentProcess final : public StepProcess {
 public:
  explicit DivergentProcess(Nat index) : StepProcess(index) {}
  std::string describe() const override { return "divergent"; }
  std::optional<Nat> approx_value(Nat, Nat) const override { return std::nullopt; }
  std::optional<Nat> unary_value(Nat) const override { return std::nullopt; }

 private:
};

class ListProcess final : public StepProcess {
 public:
  ListProcess(Nat index, std::vector<std::vector<Nat>> rows)
      : StepProcess(index), rows_(std::move(rows)) {}
  std::string describe() const override { return "list"; }
  std::optional<Nat> approx_value(Nat x, Nat t) const override {
    if (x >= rows_.size() || rows_[x].empty()) return std::nullopt;
    const auto& row = rows_[x];
    return row[std::min<Nat>(t, row.size() - 1)];
  }
  std::optional<Nat> unary_value(Nat z) const override {
    if (z >= rows_.size() || rows_[z].empty()) return std::nullopt;
    return rows_[z].back();
  }

 private:
  std::vector<std::vector<Nat>> rows_;
};

}  // namespace

ProcessPtr make_constant(Nat index, Nat value) {
  return std::make_shared<ConstantProcess>(index, value);
}
ProcessPtr make_staircase_down(Nat index, Nat start, Nat per_x) {
  return std::make_shared<StaircaseDownProcess>(index, start, per_x);
}
ProcessPtr make_staircase_up(Nat index, Nat cap) {
  return std::make_shared<StaircaseUpProcess>(index, cap);
}
ProcessPtr make_delayed_converge(Nat index, Nat delay, Nat value) {
  return std::make_shared<DelayedConvergeProcess>(index, delay, value);
}
ProcessPtr make_tracking(Nat index, Nat lag) {
  return std::make_shared<TrackingProcess>(index, lag);
}
ProcessPtr make_divergent(Nat index) { return std::make_shared<DivergentProcess>(index); }
ProcessPtr make_list(Nat index, std::vector<std::vector<Nat>> rows) {
  return std::make_shared<ListProcess>(index, std::move(rows));
}

const StepProcess* find_process(const Registry& registry, Nat index) {
  for (const auto& p : registry)
    if (p->index() == index) return p.get();
  return nullptr;
}

}  // namespace spokelab
