#include "srl/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

namespace srl {

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : InvalidArgument((field.empty() ? std::string("config") : field) +
                      (line > 0 ? " (line " + std::to_string(line) + ")" : std::string()) + ": " +
                      message),
      field_(std::move(field)),
      line_(line) {}

namespace {

/// A YAML node together with its dotted path, for diagnostics.
class Field {
 public:
  Field(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {}

  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] int line() const {
    const YAML::Mark mark = node_.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
  }
  [[nodiscard]] bool is_map() const { return node_.IsMap(); }
  [[nodiscard]] bool is_scalar() const { return node_.IsScalar(); }

  [[noreturn]] void fail(const std::string& message) const {
    throw ConfigError(path_, line(), message);
  }
  void require(bool ok, const std::string& message) const {
    if (!ok) fail(message);
  }

  void expect_map() const {
    if (!node_.IsMap()) fail("expected a mapping");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    expect_map();
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        throw ConfigError(join(key), kv.first.Mark().line + 1, "unknown key");
      }
    }
  }

  [[nodiscard]] bool has(const char* key) const { return node_.IsMap() && node_[key]; }

  [[nodiscard]] Field at(const char* key) const {
    expect_map();
    if (!node_[key]) fail(std::string("missing required key '") + key + "'");
    return Field(node_[key], join(key));
  }

  [[nodiscard]] std::vector<Field> items() const {
    if (!node_.IsSequence()) fail("expected a list");
    std::vector<Field> out;
    for (std::size_t i = 0; i < node_.size(); ++i) {
      out.emplace_back(node_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  [[nodiscard]] std::string str() const {
    if (!node_.IsScalar()) fail("expected a string");
    return node_.Scalar();
  }
  [[nodiscard]] double real() const {
    double v = 0.0;
    if (!node_.IsScalar() || !YAML::convert<double>::decode(node_, v) || !std::isfinite(v)) {
      fail("expected a finite number");
    }
    return v;
  }
  [[nodiscard]] std::uint64_t uint() const {
    if (!node_.IsScalar()) fail("expected a nonnegative integer");
    const std::string& text = node_.Scalar();
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
      fail("expected a nonnegative integer");
    }
    try {
      return std::stoull(text);
    } catch (const std::exception&) {
      fail("integer out of range");
    }
  }
  [[nodiscard]] bool boolean() const {
    bool v = false;
    if (!node_.IsScalar() || !YAML::convert<bool>::decode(node_, v)) fail("expected true or false");
    return v;
  }

  [[nodiscard]] std::vector<double> reals() const {
    std::vector<double> out;
    for (const Field& f : items()) out.push_back(f.real());
    return out;
  }
  [[nodiscard]] std::vector<std::size_t> uints() const {
    std::vector<std::size_t> out;
    for (const Field& f : items()) out.push_back(f.uint());
    return out;
  }

 private:
  [[nodiscard]] std::string join(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  YAML::Node node_;
  std::string path_;
};

double positive(const Field& f) {
  const double v = f.real();
  f.require(v > 0.0, "must be positive");
  return v;
}

std::vector<double> positive_list(const Field& f) {
  std::vector<double> out;
  for (const Field& item : f.items()) out.push_back(positive(item));
  f.require(!out.empty(), "must not be empty");
  return out;
}

SignalPattern parse_pattern(const Field& f) {
  if (f.is_scalar()) {
    f.require(f.str() == "homogeneous", "scalar pattern must be 'homogeneous'");
    return Homogeneous{};
  }
  const std::string kind = f.at("kind").str();
  if (kind == "homogeneous") {
    f.allow_only({"kind"});
    return Homogeneous{};
  }
  if (kind == "single_spike") {
    f.allow_only({"kind", "snr"});
    return SingleSpikeSnr{positive(f.at("snr"))};
  }
  if (kind == "bernoulli") {
    f.allow_only({"kind", "pi"});
    const Field pf = f.at("pi");
    const double pi = pf.real();
    pf.require(pi >= 0.0 && pi <= 1.0, "must lie in [0, 1]");
    return BernoulliSpike{pi};
  }
  if (kind == "n_spike") {
    f.allow_only({"kind", "n_spike", "snr"});
    return NSpike{f.at("n_spike").uint(), positive(f.at("snr"))};
  }
  f.at("kind").fail("unknown pattern kind '" + kind + "'");
}

SparsityRule parse_s_rule(const Field& f) {
  if (f.is_scalar() && f.str() == "two_log_p") return TwoLogP{};
  const std::uint64_t s = f.uint();
  f.require(s >= 1, "must be at least 1");
  return ExplicitS{s};
}

PointTemplate parse_point(const Field& f, PointTemplate t) {
  f.allow_only({"p", "k", "r", "s", "sigma", "pattern", "support", "random_signs"});
  if (f.has("p")) {
    const Field pf = f.at("p");
    t.p = pf.uint();
    pf.require(t.p >= 8, "must be at least 8");
  }
  if (f.has("k")) {
    const Field kf = f.at("k");
    t.k = kf.real();
    kf.require(t.k > 0.0 && t.k < 1.0, "must lie strictly between 0 and 1");
  }
  if (f.has("r")) t.r = positive(f.at("r"));
  if (f.has("s")) t.s_rule = parse_s_rule(f.at("s"));
  if (f.has("sigma")) t.sigma = positive(f.at("sigma"));
  if (f.has("pattern")) t.pattern = parse_pattern(f.at("pattern"));
  if (f.has("support")) {
    const Field sf = f.at("support");
    const std::string rule = sf.str();
    if (rule == "uniform_random") {
      t.support_rule = SupportRule::UniformRandom;
    } else if (rule == "first_s") {
      t.support_rule = SupportRule::FirstS;
    } else {
      sf.fail("must be 'uniform_random' or 'first_s'");
    }
  }
  if (f.has("random_signs")) t.random_signs = f.at("random_signs").boolean();
  return t;
}

Sweep parse_sweep(const Field& f, const PointTemplate& base) {
  const std::string kind = f.at("kind").str();
  if (kind == "dimension") {
    f.allow_only({"kind", "p", "r"});
    DimensionSweep sweep;
    const Field pf = f.at("p");
    for (const Field& item : pf.items()) {
      sweep.p_list.push_back(item.uint());
      item.require(sweep.p_list.back() >= 8, "must be at least 8");
    }
    pf.require(!sweep.p_list.empty(), "must not be empty");
    sweep.r_list = positive_list(f.at("r"));
    return sweep;
  }
  if (kind == "strength") {
    f.allow_only({"kind", "r", "pi", "s"});
    StrengthSweep sweep;
    sweep.r_list = positive_list(f.at("r"));
    for (const Field& item : f.at("pi").items()) {
      sweep.pi_list.push_back(item.real());
      item.require(sweep.pi_list.back() >= 0.0 && sweep.pi_list.back() <= 1.0, "must lie in [0, 1]");
    }
    for (const Field& item : f.at("s").items()) {
      sweep.s_list.push_back(item.uint());
      item.require(sweep.s_list.back() >= 1, "must be at least 1");
    }
    f.require(!sweep.pi_list.empty() && !sweep.s_list.empty(), "pi and s lists must not be empty");
    return sweep;
  }
  if (kind == "spike") {
    f.allow_only({"kind", "n_spike", "r", "snr"});
    SpikeSweep sweep;
    sweep.n_spike_list = f.at("n_spike").uints();
    f.require(!sweep.n_spike_list.empty(), "n_spike list must not be empty");
    sweep.r_list = positive_list(f.at("r"));
    sweep.target_snr = positive(f.at("snr"));
    return sweep;
  }
  if (kind == "custom") {
    f.allow_only({"kind", "points"});
    CustomSweep sweep;
    if (f.has("points")) {
      for (const Field& item : f.at("points").items()) sweep.points.push_back(parse_point(item, base));
    }
    return sweep;
  }
  f.at("kind").fail("unknown sweep kind '" + kind + "'");
}

SHatRule parse_s_hat(const Field& f) {
  const std::string rule = f.at("rule").str();
  if (rule == "true_s") {
    f.allow_only({"rule"});
    return SHatTrueS{};
  }
  if (rule == "fixed") {
    f.allow_only({"rule", "value"});
    const Field vf = f.at("value");
    const std::size_t v = vf.uint();
    vf.require(v >= 1, "must be at least 1");
    return SHatFixed{v};
  }
  if (rule == "multiple") {
    f.allow_only({"rule", "multiple"});
    return SHatMultiple{positive(f.at("multiple"))};
  }
  if (rule == "cv") {
    f.allow_only({"rule", "multipliers", "folds"});
    SHatCrossValidate cv;
    if (f.has("multipliers")) {
      const Field mf = f.at("multipliers");
      cv.multipliers = mf.uints();
      mf.require(!cv.multipliers.empty(), "must not be empty");
      for (std::size_t m : cv.multipliers) mf.require(m >= 1, "multipliers must be at least 1");
    }
    if (f.has("folds")) {
      const Field ff = f.at("folds");
      cv.folds = ff.uint();
      ff.require(cv.folds >= 2, "must be at least 2");
    }
    return cv;
  }
  f.at("rule").fail("unknown s_hat rule '" + rule + "'");
}

void parse_iht_common(const Field& f, SHatRule& s_hat, double& step, std::size_t& max_iters,
                      double& rel_tol) {
  if (f.has("s_hat")) s_hat = parse_s_hat(f.at("s_hat"));
  if (f.has("step")) step = positive(f.at("step"));
  if (f.has("max_iters")) {
    const Field mf = f.at("max_iters");
    max_iters = mf.uint();
    mf.require(max_iters >= 1, "must be at least 1");
  }
  if (f.has("rel_tol")) {
    const Field tf = f.at("rel_tol");
    rel_tol = tf.real();
    tf.require(rel_tol >= 0.0, "must be nonnegative");
  }
}

MethodSpec parse_method(const Field& f) {
  MethodSpec m;
  m.name = f.at("name").str();
  f.at("name").require(!m.name.empty(), "must not be empty");
  const std::string kind = f.at("kind").str();
  if (kind == "ms") {
    f.allow_only({"name", "kind", "mode", "tau"});
    MsMethod ms;
    const std::string mode = f.has("mode") ? f.at("mode").str() : "top_s";
    if (mode == "threshold") {
      ms.thresholded = true;
      const Field tf = f.at("tau");
      ms.tau = tf.real();
      tf.require(ms.tau >= 0.0, "must be nonnegative");
    } else {
      if (mode != "top_s") f.at("mode").fail("must be 'top_s' or 'threshold'");
      f.require(!f.has("tau"), "tau is only valid with mode 'threshold'");
    }
    m.kind = ms;
  } else if (kind == "bss") {
    f.allow_only({"name", "kind", "budget"});
    BssMethod bss;
    if (f.has("budget")) {
      bss.budget = f.at("budget").uint();
      f.at("budget").require(bss.budget >= 1, "must be at least 1");
    }
    m.kind = bss;
  } else if (kind == "iht") {
    f.allow_only({"name", "kind", "s_hat", "step", "max_iters", "rel_tol"});
    IhtMethod iht;
    parse_iht_common(f, iht.s_hat, iht.step, iht.max_iters, iht.rel_tol);
    m.kind = iht;
  } else if (kind == "ets") {
    f.allow_only({"name", "kind", "sampling", "gamma", "varsigma", "output", "s_hat", "step",
                  "step_rule", "max_iters", "rel_tol"});
    EtsMethod ets;
    if (f.has("sampling")) {
      const Field sf = f.at("sampling");
      const std::string sampling = sf.str();
      if (sampling == "split") {
        ets.full_data = false;
      } else if (sampling != "full_data") {
        sf.fail("must be 'full_data' or 'split'");
      }
    }
    if (f.has("gamma")) {
      const Field gf = f.at("gamma");
      ets.gamma = gf.real();
      gf.require(ets.gamma > 0.0 && ets.gamma < 1.0, "must lie strictly between 0 and 1");
    }
    if (f.has("varsigma")) ets.varsigma = positive(f.at("varsigma"));
    if (f.has("output")) {
      const Field of = f.at("output");
      const std::string output = of.str();
      if (output == "thresholded") {
        ets.thresholded = true;
      } else if (output != "top_s") {
        of.fail("must be 'top_s' or 'thresholded'");
      }
    }
    if (f.has("step_rule")) {
      const Field rf = f.at("step_rule");
      const std::string rule = rf.str();
      if (rule == "theoretical") {
        ets.step_rule = StepRule::Theoretical;
      } else if (rule != "fixed") {
        rf.fail("must be 'fixed' or 'theoretical'");
      }
    }
    parse_iht_common(f, ets.s_hat, ets.step, ets.max_iters, ets.rel_tol);
    m.kind = ets;
  } else if (kind == "lasso") {
    f.allow_only({"name", "kind", "lambda_max_scale", "path_length", "path_ratio", "cd_tol",
                  "cd_max_sweeps"});
    LassoMethod lasso;
    if (f.has("lambda_max_scale")) lasso.lambda_max_scale = positive(f.at("lambda_max_scale"));
    if (f.has("path_length")) {
      lasso.path_length = f.at("path_length").uint();
      f.at("path_length").require(lasso.path_length >= 1, "must be at least 1");
    }
    if (f.has("path_ratio")) {
      const Field rf = f.at("path_ratio");
      lasso.path_ratio = rf.real();
      rf.require(lasso.path_ratio > 0.0 && lasso.path_ratio < 1.0, "must lie strictly between 0 and 1");
    }
    if (f.has("cd_tol")) lasso.cd_tol = positive(f.at("cd_tol"));
    if (f.has("cd_max_sweeps")) {
      lasso.cd_max_sweeps = f.at("cd_max_sweeps").uint();
      f.at("cd_max_sweeps").require(lasso.cd_max_sweeps >= 1, "must be at least 1");
    }
    m.kind = lasso;
  } else if (kind == "oracle") {
    f.allow_only({"name", "kind"});
    m.kind = OracleMethod{};
  } else if (kind == "empty") {
    f.allow_only({"name", "kind"});
    m.kind = EmptyMethod{};
  } else {
    f.at("kind").fail("unknown method kind '" + kind + "'");
  }
  return m;
}

ExperimentGrid parse_grid(const Field& f) {
  f.allow_only({"id", "reps", "master_seed", "debug_hash", "base", "sweep", "methods"});
  ExperimentGrid grid;
  const Field idf = f.at("id");
  grid.id = idf.str();
  idf.require(!grid.id.empty() &&
                  grid.id.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                                            "0123456789_.-") == std::string::npos,
              "must be a nonempty name of letters, digits, '_', '.', '-'");
  if (f.has("reps")) {
    grid.reps = f.at("reps").uint();
    f.at("reps").require(grid.reps >= 1, "must be at least 1");
  }
  if (f.has("master_seed")) grid.master_seed = f.at("master_seed").uint();
  if (f.has("debug_hash")) grid.debug_hash = f.at("debug_hash").boolean();
  if (f.has("base")) grid.base = parse_point(f.at("base"), PointTemplate{});
  if (f.has("sweep")) grid.sweep = parse_sweep(f.at("sweep"), grid.base);
  const Field mf = f.at("methods");
  std::set<std::string> names;
  for (const Field& item : mf.items()) {
    grid.methods.push_back(parse_method(item));
    item.require(names.insert(grid.methods.back().name).second, "duplicate method name");
  }
  mf.require(!grid.methods.empty(), "at least one method is required");
  return grid;
}

OutputConfig parse_output(const Field& f) {
  f.allow_only({"out_dir", "workers", "format"});
  OutputConfig out;
  if (f.has("out_dir")) out.out_dir = f.at("out_dir").str();
  if (f.has("workers")) out.workers = f.at("workers").uint();
  if (f.has("format")) {
    out.format = f.at("format").str();
    f.at("format").require(out.format == "csv", "only 'csv' is supported");
  }
  return out;
}

// ---- emission ----

void emit_pattern(YAML::Emitter& e, const SignalPattern& pattern) {
  e << YAML::Flow << YAML::BeginMap;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Homogeneous>) {
          e << YAML::Key << "kind" << YAML::Value << "homogeneous";
        } else if constexpr (std::is_same_v<T, SingleSpikeSnr>) {
          e << YAML::Key << "kind" << YAML::Value << "single_spike";
          e << YAML::Key << "snr" << YAML::Value << p.target_snr;
        } else if constexpr (std::is_same_v<T, BernoulliSpike>) {
          e << YAML::Key << "kind" << YAML::Value << "bernoulli";
          e << YAML::Key << "pi" << YAML::Value << p.pi;
        } else {
          e << YAML::Key << "kind" << YAML::Value << "n_spike";
          e << YAML::Key << "n_spike" << YAML::Value << p.n_spike;
          e << YAML::Key << "snr" << YAML::Value << p.target_snr;
        }
      },
      pattern);
  e << YAML::EndMap;
}

void emit_point(YAML::Emitter& e, const PointTemplate& t) {
  e << YAML::BeginMap;
  e << YAML::Key << "p" << YAML::Value << t.p;
  e << YAML::Key << "k" << YAML::Value << t.k;
  e << YAML::Key << "r" << YAML::Value << t.r;
  e << YAML::Key << "s" << YAML::Value;
  if (const auto* ex = std::get_if<ExplicitS>(&t.s_rule)) {
    e << ex->s;
  } else {
    e << "two_log_p";
  }
  e << YAML::Key << "sigma" << YAML::Value << t.sigma;
  e << YAML::Key << "pattern" << YAML::Value;
  emit_pattern(e, t.pattern);
  e << YAML::Key << "support" << YAML::Value
    << (t.support_rule == SupportRule::FirstS ? "first_s" : "uniform_random");
  e << YAML::Key << "random_signs" << YAML::Value << t.random_signs;
  e << YAML::EndMap;
}

template <class T>
void emit_list(YAML::Emitter& e, const std::vector<T>& values) {
  e << YAML::Flow << YAML::BeginSeq;
  for (const T& v : values) e << v;
  e << YAML::EndSeq;
}

void emit_sweep(YAML::Emitter& e, const Sweep& sweep) {
  e << YAML::BeginMap;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DimensionSweep>) {
          e << YAML::Key << "kind" << YAML::Value << "dimension";
          e << YAML::Key << "p" << YAML::Value;
          emit_list(e, s.p_list);
          e << YAML::Key << "r" << YAML::Value;
          emit_list(e, s.r_list);
        } else if constexpr (std::is_same_v<T, StrengthSweep>) {
          e << YAML::Key << "kind" << YAML::Value << "strength";
          e << YAML::Key << "r" << YAML::Value;
          emit_list(e, s.r_list);
          e << YAML::Key << "pi" << YAML::Value;
          emit_list(e, s.pi_list);
          e << YAML::Key << "s" << YAML::Value;
          emit_list(e, s.s_list);
        } else if constexpr (std::is_same_v<T, SpikeSweep>) {
          e << YAML::Key << "kind" << YAML::Value << "spike";
          e << YAML::Key << "n_spike" << YAML::Value;
          emit_list(e, s.n_spike_list);
          e << YAML::Key << "r" << YAML::Value;
          emit_list(e, s.r_list);
          e << YAML::Key << "snr" << YAML::Value << s.target_snr;
        } else {
          e << YAML::Key << "kind" << YAML::Value << "custom";
          e << YAML::Key << "points" << YAML::Value << YAML::BeginSeq;
          for (const PointTemplate& t : s.points) emit_point(e, t);
          e << YAML::EndSeq;
        }
      },
      sweep);
  e << YAML::EndMap;
}

void emit_s_hat(YAML::Emitter& e, const SHatRule& rule) {
  e << YAML::Flow << YAML::BeginMap;
  std::visit(
      [&](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SHatTrueS>) {
          e << YAML::Key << "rule" << YAML::Value << "true_s";
        } else if constexpr (std::is_same_v<T, SHatFixed>) {
          e << YAML::Key << "rule" << YAML::Value << "fixed";
          e << YAML::Key << "value" << YAML::Value << r.value;
        } else if constexpr (std::is_same_v<T, SHatMultiple>) {
          e << YAML::Key << "rule" << YAML::Value << "multiple";
          e << YAML::Key << "multiple" << YAML::Value << r.multiple;
        } else {
          e << YAML::Key << "rule" << YAML::Value << "cv";
          e << YAML::Key << "multipliers" << YAML::Value;
          emit_list(e, r.multipliers);
          e << YAML::Key << "folds" << YAML::Value << r.folds;
        }
      },
      rule);
  e << YAML::EndMap;
}

void emit_method(YAML::Emitter& e, const MethodSpec& m) {
  e << YAML::BeginMap;
  e << YAML::Key << "name" << YAML::Value << m.name;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, MsMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "ms";
          e << YAML::Key << "mode" << YAML::Value << (k.thresholded ? "threshold" : "top_s");
          if (k.thresholded) e << YAML::Key << "tau" << YAML::Value << k.tau;
        } else if constexpr (std::is_same_v<T, BssMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "bss";
          e << YAML::Key << "budget" << YAML::Value << k.budget;
        } else if constexpr (std::is_same_v<T, IhtMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "iht";
          e << YAML::Key << "s_hat" << YAML::Value;
          emit_s_hat(e, k.s_hat);
          e << YAML::Key << "step" << YAML::Value << k.step;
          e << YAML::Key << "max_iters" << YAML::Value << k.max_iters;
          e << YAML::Key << "rel_tol" << YAML::Value << k.rel_tol;
        } else if constexpr (std::is_same_v<T, EtsMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "ets";
          e << YAML::Key << "sampling" << YAML::Value << (k.full_data ? "full_data" : "split");
          e << YAML::Key << "gamma" << YAML::Value << k.gamma;
          e << YAML::Key << "varsigma" << YAML::Value << k.varsigma;
          e << YAML::Key << "output" << YAML::Value << (k.thresholded ? "thresholded" : "top_s");
          e << YAML::Key << "s_hat" << YAML::Value;
          emit_s_hat(e, k.s_hat);
          e << YAML::Key << "step" << YAML::Value << k.step;
          e << YAML::Key << "step_rule" << YAML::Value
            << (k.step_rule == StepRule::Theoretical ? "theoretical" : "fixed");
          e << YAML::Key << "max_iters" << YAML::Value << k.max_iters;
          e << YAML::Key << "rel_tol" << YAML::Value << k.rel_tol;
        } else if constexpr (std::is_same_v<T, LassoMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "lasso";
          e << YAML::Key << "lambda_max_scale" << YAML::Value << k.lambda_max_scale;
          e << YAML::Key << "path_length" << YAML::Value << k.path_length;
          e << YAML::Key << "path_ratio" << YAML::Value << k.path_ratio;
          e << YAML::Key << "cd_tol" << YAML::Value << k.cd_tol;
          e << YAML::Key << "cd_max_sweeps" << YAML::Value << k.cd_max_sweeps;
        } else if constexpr (std::is_same_v<T, OracleMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "oracle";
        } else if constexpr (std::is_same_v<T, EmptyMethod>) {
          e << YAML::Key << "kind" << YAML::Value << "empty";
        } else {
          throw InvalidArgument("method '" + m.name + "' is an in-process custom method and cannot be serialized");
        }
      },
      m.kind);
  e << YAML::EndMap;
}

}  // namespace

RunConfig parse_run_config(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError("", e.mark.line + 1, "YAML syntax error: " + e.msg);
  }
  const Field top(root, "");
  top.allow_only({"experiment", "output"});
  RunConfig config;
  config.grid = parse_grid(top.at("experiment"));
  if (top.has("output")) config.output = parse_output(top.at("output"));
  return config;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot read config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_run_config(buffer.str());
}

std::string emit_run_config(const RunConfig& config) {
  const ExperimentGrid& g = config.grid;
  YAML::Emitter e;
  e.SetDoublePrecision(17);
  e << YAML::BeginMap;
  e << YAML::Key << "experiment" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "id" << YAML::Value << g.id;
  e << YAML::Key << "reps" << YAML::Value << g.reps;
  e << YAML::Key << "master_seed" << YAML::Value << g.master_seed;
  e << YAML::Key << "debug_hash" << YAML::Value << g.debug_hash;
  e << YAML::Key << "base" << YAML::Value;
  emit_point(e, g.base);
  e << YAML::Key << "sweep" << YAML::Value;
  emit_sweep(e, g.sweep);
  e << YAML::Key << "methods" << YAML::Value << YAML::BeginSeq;
  for (const MethodSpec& m : g.methods) emit_method(e, m);
  e << YAML::EndSeq;
  e << YAML::EndMap;
  e << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  e << YAML::Key << "out_dir" << YAML::Value << config.output.out_dir;
  e << YAML::Key << "workers" << YAML::Value << config.output.workers;
  e << YAML::Key << "format" << YAML::Value << config.output.format;
  e << YAML::EndMap;
  e << YAML::EndMap;
  return std::string(e.c_str()) + "\n";
}

}  // namespace srl
