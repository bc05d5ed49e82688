// Copyright 2026 The mwlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "mwlab/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "mwlab/error.hpp"

namespace mwlab {
namespace {

constexpr std::pair<StudyKind, std::string_view> kStudies[] = {
    {StudyKind::sampling_rate, "sampling_rate"},
    {StudyKind::dobrushin, "dobrushin"},
    {StudyKind::chaos, "chaos"},
    {StudyKind::multiwise_limit, "multiwise_limit"},
    {StudyKind::joint_limit, "joint_limit"},
    {StudyKind::monokinetic_check, "monokinetic_check"},
};

const std::set<std::string, std::less<>> kTestFunctions = {"zero", "constant", "affine",
                                                           "sinusoidal"};

std::string where(const toml::node& node, std::string_view key) {
  std::ostringstream s;
  s << "'" << key << "'";
  const auto& src = node.source();
  if (src.begin.line != 0) s << " (line " << src.begin.line << ")";
  return s.str();
}

void reject_unknown(const toml::table& table, std::initializer_list<std::string_view> known,
                    std::string_view section) {
  for (const auto& [key, node] : table) {
    bool ok = false;
    for (auto k : known) ok = ok || key.str() == k;
    if (!ok)
      throw ConfigError("unknown key '" + std::string(key.str()) + "' in " + std::string(section));
  }
}

std::optional<double> get_real(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  if (auto v = node->value_exact<double>()) return *v;
  if (auto v = node->value_exact<std::int64_t>()) return static_cast<double>(*v);
  if (auto s = node->value_exact<std::string>()) {
    if (*s == "inf" || *s == "infinity") return std::numeric_limits<double>::infinity();
  }
  throw ConfigError(where(*node, key) + " must be a number");
}

std::optional<std::uint64_t> get_uint(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  auto v = node->value_exact<std::int64_t>();
  if (!v || *v < 0) throw ConfigError(where(*node, key) + " must be a nonnegative integer");
  return static_cast<std::uint64_t>(*v);
}

std::optional<std::string> get_string(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  auto v = node->value_exact<std::string>();
  if (!v) throw ConfigError(where(*node, key) + " must be a string");
  return *v;
}

std::optional<std::vector<double>> get_reals(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  if (node->is_number()) return std::vector<double>{*get_real(t, key)};
  const toml::array* arr = node->as_array();
  if (arr == nullptr) throw ConfigError(where(*node, key) + " must be a number or an array");
  std::vector<double> out;
  for (const auto& el : *arr) {
    if (auto v = el.value_exact<double>()) {
      out.push_back(*v);
    } else if (auto i = el.value_exact<std::int64_t>()) {
      out.push_back(static_cast<double>(*i));
    } else if (const toml::array* inner = el.as_array()) {
      for (const auto& x : *inner) {
        auto d = x.value<double>();
        if (!d) throw ConfigError(where(*node, key) + " has a non-numeric entry");
        out.push_back(*d);
      }
    } else {
      throw ConfigError(where(*node, key) + " has a non-numeric entry");
    }
  }
  return out;
}

std::optional<std::vector<std::size_t>> get_uints(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return std::nullopt;
  if (node->is_integer()) return std::vector<std::size_t>{*get_uint(t, key)};
  const toml::array* arr = node->as_array();
  if (arr == nullptr) throw ConfigError(where(*node, key) + " must be an integer array");
  std::vector<std::size_t> out;
  for (const auto& el : *arr) {
    auto v = el.value_exact<std::int64_t>();
    if (!v || *v < 0) throw ConfigError(where(*node, key) + " must hold nonnegative integers");
    out.push_back(static_cast<std::size_t>(*v));
  }
  return out;
}

const toml::table* get_table(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (node == nullptr) return nullptr;
  const toml::table* tab = node->as_table();
  if (tab == nullptr) throw ConfigError(where(*node, key) + " must be a table");
  return tab;
}

LabelLaw parse_labels(const toml::table& t) {
  reject_unknown(t, {"law", "lower", "upper", "points", "weights", "dim"}, "[initial.labels]");
  const std::string law = get_string(t, "law").value_or("uniform_box");
  if (law == "uniform_box") {
    UniformBoxLabels box;
    box.lower = get_reals(t, "lower").value_or(std::vector<double>{0.0});
    box.upper = get_reals(t, "upper").value_or(std::vector<double>{1.0});
    return box;
  }
  if (law == "discrete") {
    DiscreteLabels d;
    d.dim = get_uint(t, "dim").value_or(1);
    d.points = get_reals(t, "points").value_or(std::vector<double>{});
    d.weights = get_reals(t, "weights").value_or(std::vector<double>{});
    return d;
  }
  throw ConfigError("unknown label law '" + law + "' (expected uniform_box or discrete)");
}

OpinionLaw parse_opinions(const toml::table& t) {
  reject_unknown(t,
                 {"law", "profile", "value", "intercept", "slope", "offset", "amplitude",
                  "frequency", "phase", "lower", "upper", "center", "radius", "mean", "stddev"},
                 "[initial.opinions]");
  const std::string law = get_string(t, "law").value_or("monokinetic");
  if (law == "monokinetic") {
    OpinionProfile p;
    const std::string kind = get_string(t, "profile").value_or("constant");
    if (kind == "constant") {
      p.kind = OpinionProfile::Kind::constant;
    } else if (kind == "affine") {
      p.kind = OpinionProfile::Kind::affine;
    } else if (kind == "sinusoidal") {
      p.kind = OpinionProfile::Kind::sinusoidal;
    } else if (kind == "clamped") {
      p.kind = OpinionProfile::Kind::clamped;
    } else {
      throw ConfigError("unknown opinion profile '" + kind + "'");
    }
    p.value = get_reals(t, "value").value_or(std::vector<double>{0.0});
    p.intercept = get_real(t, "intercept").value_or(0.0);
    p.slope = get_reals(t, "slope").value_or(std::vector<double>{});
    p.offset = get_real(t, "offset").value_or(0.0);
    p.amplitude = get_real(t, "amplitude").value_or(0.0);
    p.frequency = get_real(t, "frequency").value_or(1.0);
    p.phase = get_real(t, "phase").value_or(0.0);
    p.lower = get_real(t, "lower").value_or(0.0);
    p.upper = get_real(t, "upper").value_or(0.0);
    return Monokinetic{p};
  }
  if (law == "uniform_ball") {
    UniformBallOpinions b;
    b.center = get_reals(t, "center").value_or(std::vector<double>{0.0});
    b.radius = get_real(t, "radius").value_or(1.0);
    return b;
  }
  if (law == "truncated_gaussian") {
    TruncatedGaussianOpinions g;
    g.mean = get_reals(t, "mean").value_or(std::vector<double>{0.0});
    g.stddev = get_real(t, "stddev").value_or(1.0);
    g.radius = get_real(t, "radius").value_or(1.0);
    return g;
  }
  throw ConfigError("unknown opinion law '" + law + "'");
}

toml::array real_array(const std::vector<double>& v) {
  toml::array a;
  for (double x : v) a.push_back(x);
  return a;
}

toml::array uint_array(const std::vector<std::size_t>& v) {
  toml::array a;
  for (std::size_t x : v) a.push_back(static_cast<std::int64_t>(x));
  return a;
}

std::string_view rhs_name(RhsChoice c) {
  switch (c) {
    case RhsChoice::automatic:
      return "auto";
    case RhsChoice::exact:
      return "exact";
    case RhsChoice::monte_carlo:
      return "monte_carlo";
    case RhsChoice::closed_form:
      return "closed_form";
  }
  return "auto";
}

}  // namespace

std::string_view study_name(StudyKind kind) {
  for (const auto& [k, n] : kStudies)
    if (k == kind) return n;
  return "unknown";
}

StudyKind parse_study(std::string_view name) {
  for (const auto& [k, n] : kStudies)
    if (n == name) return k;
  throw ConfigError("unknown study '" + std::string(name) + "'");
}

RhsMode ExperimentConfig::rhs_mode(const InteractionKernel& kernel, std::uint64_t mc_seed) const {
  switch (rhs) {
    case RhsChoice::automatic:
      return kernel.has_closed_form() ? RhsMode::closed_form() : RhsMode::exact();
    case RhsChoice::exact:
      return RhsMode::exact();
    case RhsChoice::monte_carlo:
      return RhsMode::monte_carlo(S, mc_seed);
    case RhsChoice::closed_form:
      return RhsMode::closed_form();
  }
  return RhsMode::exact();
}

void ExperimentConfig::validate() const {
  try {
    make_kernel(kernel, kernel_params);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("kernel: ") + e.what());
  }
  initial.validate();
  if (!(kernel_params.radius > 0.0)) throw ConfigError("kernel radius must be positive");
  if (m.empty()) throw ConfigError("m list must be nonempty");
  for (std::size_t v : m)
    if (v == 0) throw ConfigError("every m must be >= 1");
  if (!(p >= 1.0) || std::isinf(p)) throw ConfigError("p must lie in [1, inf)");
  if (!(q >= 1.0)) throw ConfigError("q must lie in [1, inf]");
  if (!(z > 0.0)) throw ConfigError("z must be positive");
  if (!(T >= 0.0) || !std::isfinite(T)) throw ConfigError("T must be finite and >= 0");
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  if (seeds == 0) throw ConfigError("seeds must be >= 1");
  if (rhs == RhsChoice::monte_carlo && S == 0) throw ConfigError("S must be >= 1 in Monte-Carlo mode");
  if (initial.opinion_dim() != kernel_params.opinion_dim)
    throw ConfigError("initial opinion dimension differs from the kernel opinion dimension");
  for (const auto& f : test_functions)
    if (!kTestFunctions.contains(f)) throw ConfigError("unknown test function '" + f + "'");

  const bool n_sweep = study == StudyKind::sampling_rate || study == StudyKind::dobrushin ||
                       study == StudyKind::chaos || study == StudyKind::joint_limit;
  if (n_sweep) {
    if (N.empty()) throw ConfigError("N list must be nonempty");
    for (std::size_t v : N)
      if (v == 0) throw ConfigError("every N must be >= 1");
  }
  if ((study == StudyKind::dobrushin || study == StudyKind::chaos) && m.size() != 1)
    throw ConfigError(std::string(study_name(study)) + " study sweeps N at a single m");
  if ((study == StudyKind::dobrushin || study == StudyKind::chaos) && N_ref == 0)
    throw ConfigError("N_ref must be >= 1");
  switch (study) {
    case StudyKind::chaos:
      if (k != 1 && k != 2) throw ConfigError("chaos study needs k in {1, 2}");
      if (R == 0) throw ConfigError("R must be >= 1");
      for (std::size_t v : N)
        if (k > v) throw ConfigError("k exceeds an N in the sweep");
      break;
    case StudyKind::joint_limit:
      if (!(alpha > 0.0 && alpha < 0.5))
        throw ConfigError("joint-limit exponent alpha must lie in (0, 1/2)");
      if (std::isinf(q)) throw ConfigError("joint-limit schedule needs a finite q");
      if (!initial.monokinetic()) throw ConfigError("joint-limit study needs a monokinetic f0");
      if (R == 0) throw ConfigError("R must be >= 1");
      if (test_functions.empty()) throw ConfigError("test_functions must be nonempty");
      for (std::size_t v : N)
        if (v < 2) throw ConfigError("joint-limit study needs every N >= 2");
      break;
    case StudyKind::multiwise_limit:
    case StudyKind::monokinetic_check:
      if (!initial.monokinetic())
        throw ConfigError(std::string(study_name(study)) + " needs a monokinetic f0");
      if (study == StudyKind::monokinetic_check && m.size() != 1)
        throw ConfigError("monokinetic check runs a single m");
      if (study == StudyKind::monokinetic_check) {
        if (dt_list.empty()) throw ConfigError("dt_list must be nonempty");
        for (double v : dt_list)
          if (!(v > 0.0)) throw ConfigError("every dt in dt_list must be positive");
      }
      break;
    default:
      break;
  }
}

std::string ExperimentConfig::to_toml() const {
  toml::table root;
  root.insert("study", std::string(study_name(study)));
  if (!name.empty()) root.insert("name", name);
  root.insert("seed", static_cast<std::int64_t>(seed));
  root.insert("seeds", static_cast<std::int64_t>(seeds));
  root.insert("m", uint_array(m));
  root.insert("N", uint_array(N));
  root.insert("S", static_cast<std::int64_t>(S));
  root.insert("R", static_cast<std::int64_t>(R));
  root.insert("k", static_cast<std::int64_t>(k));
  root.insert("p", p);
  root.insert("q", q);
  root.insert("z", z);
  root.insert("N_ref", static_cast<std::int64_t>(N_ref));
  root.insert("alpha", alpha);
  root.insert("label_nodes", static_cast<std::int64_t>(label_nodes));
  root.insert("validation_probes", static_cast<std::int64_t>(validation_probes));
  root.insert("T", T);
  root.insert("dt", dt);
  if (!dt_list.empty()) root.insert("dt_list", real_array(dt_list));
  root.insert("scheme", std::string(scheme_name(scheme)));
  root.insert("rhs_mode", std::string(rhs_name(rhs)));
  toml::array fns;
  for (const auto& f : test_functions) fns.push_back(f);
  root.insert("test_functions", fns);

  toml::table kt;
  kt.insert("name", kernel);
  kt.insert("radius", kernel_params.radius);
  kt.insert("opinion_dim", static_cast<std::int64_t>(kernel_params.opinion_dim));
  if (kernel_params.bound) kt.insert("bound", *kernel_params.bound);
  if (kernel_params.lipschitz) kt.insert("lipschitz", *kernel_params.lipschitz);
  root.insert("kernel", kt);

  toml::table labels;
  if (const auto* box = std::get_if<UniformBoxLabels>(&initial.labels)) {
    labels.insert("law", "uniform_box");
    labels.insert("lower", real_array(box->lower));
    labels.insert("upper", real_array(box->upper));
  } else {
    const auto& d = std::get<DiscreteLabels>(initial.labels);
    labels.insert("law", "discrete");
    labels.insert("dim", static_cast<std::int64_t>(d.dim));
    labels.insert("points", real_array(d.points));
    if (!d.weights.empty()) labels.insert("weights", real_array(d.weights));
  }
  toml::table opinions;
  if (const auto* mk = std::get_if<Monokinetic>(&initial.opinions)) {
    const OpinionProfile& p = mk->profile;
    opinions.insert("law", "monokinetic");
    switch (p.kind) {
      case OpinionProfile::Kind::constant:
        opinions.insert("profile", "constant");
        opinions.insert("value", real_array(p.value));
        break;
      case OpinionProfile::Kind::affine:
        opinions.insert("profile", "affine");
        opinions.insert("intercept", p.intercept);
        opinions.insert("slope", real_array(p.slope));
        break;
      case OpinionProfile::Kind::sinusoidal:
        opinions.insert("profile", "sinusoidal");
        opinions.insert("offset", p.offset);
        opinions.insert("amplitude", p.amplitude);
        opinions.insert("frequency", p.frequency);
        opinions.insert("phase", p.phase);
        break;
      case OpinionProfile::Kind::clamped:
        opinions.insert("profile", "clamped");
        opinions.insert("intercept", p.intercept);
        opinions.insert("slope", real_array(p.slope));
        opinions.insert("lower", p.lower);
        opinions.insert("upper", p.upper);
        break;
    }
  } else if (const auto* b = std::get_if<UniformBallOpinions>(&initial.opinions)) {
    opinions.insert("law", "uniform_ball");
    opinions.insert("center", real_array(b->center));
    opinions.insert("radius", b->radius);
  } else {
    const auto& g = std::get<TruncatedGaussianOpinions>(initial.opinions);
    opinions.insert("law", "truncated_gaussian");
    opinions.insert("mean", real_array(g.mean));
    opinions.insert("stddev", g.stddev);
    opinions.insert("radius", g.radius);
  }
  toml::table init;
  init.insert("labels", labels);
  init.insert("opinions", opinions);
  root.insert("initial", init);

  std::ostringstream out;
  out << root;
  return out.str();
}

ExperimentConfig parse_config(std::string_view toml_text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << "TOML parse error in " << source << " at line " << e.source().begin.line << ": "
        << e.description();
    throw ConfigError(msg.str());
  }
  reject_unknown(root,
                 {"study", "name", "kernel", "m", "N", "S", "R", "k", "p", "q", "z", "N_ref",
                  "alpha", "seeds", "label_nodes", "validation_probes", "initial", "T", "dt",
                  "dt_list", "scheme", "rhs_mode", "test_functions", "seed", "output", "threads"},
                 "the top level");

  ExperimentConfig c;
  const auto study = get_string(root, "study");
  if (!study) throw ConfigError("missing required key 'study'");
  c.study = parse_study(*study);
  c.name = get_string(root, "name").value_or("");
  for (char ch : c.name)
    if (ch == '/' || ch == '\\' || ch == ',') throw ConfigError("name must not contain '/', '\\' or ','");

  if (const toml::table* kt = get_table(root, "kernel")) {
    reject_unknown(*kt, {"name", "radius", "opinion_dim", "bound", "lipschitz"}, "[kernel]");
    c.kernel = get_string(*kt, "name").value_or(c.kernel);
    c.kernel_params.radius = get_real(*kt, "radius").value_or(1.0);
    c.kernel_params.opinion_dim = get_uint(*kt, "opinion_dim").value_or(1);
    c.kernel_params.bound = get_real(*kt, "bound");
    c.kernel_params.lipschitz = get_real(*kt, "lipschitz");
  } else {
    throw ConfigError("missing required table [kernel]");
  }

  c.m = get_uints(root, "m").value_or(c.m);
  c.N = get_uints(root, "N").value_or(c.N);
  c.S = get_uint(root, "S").value_or(c.S);
  c.R = get_uint(root, "R").value_or(c.R);
  c.k = get_uint(root, "k").value_or(c.k);
  c.p = get_real(root, "p").value_or(c.p);
  c.q = get_real(root, "q").value_or(c.q);
  c.z = get_real(root, "z").value_or(c.z);
  c.N_ref = get_uint(root, "N_ref").value_or(c.N_ref);
  c.alpha = get_real(root, "alpha").value_or(c.alpha);
  c.seeds = get_uint(root, "seeds").value_or(c.seeds);
  c.label_nodes = get_uint(root, "label_nodes").value_or(c.label_nodes);
  c.validation_probes = get_uint(root, "validation_probes").value_or(c.validation_probes);
  c.T = get_real(root, "T").value_or(c.T);
  c.dt = get_real(root, "dt").value_or(c.dt);
  c.dt_list = get_reals(root, "dt_list").value_or(c.dt_list);
  if (auto s = get_string(root, "scheme")) c.scheme = parse_scheme(*s);
  if (auto s = get_string(root, "rhs_mode")) {
    if (*s == "auto") {
      c.rhs = RhsChoice::automatic;
    } else if (*s == "exact") {
      c.rhs = RhsChoice::exact;
    } else if (*s == "monte_carlo" || *s == "mc") {
      c.rhs = RhsChoice::monte_carlo;
    } else if (*s == "closed_form") {
      c.rhs = RhsChoice::closed_form;
    } else {
      throw ConfigError("unknown rhs_mode '" + *s + "'");
    }
  }
  if (const toml::node* node = root.get("test_functions")) {
    const toml::array* arr = node->as_array();
    if (arr == nullptr) throw ConfigError("'test_functions' must be an array of strings");
    c.test_functions.clear();
    for (const auto& el : *arr) {
      auto s = el.value_exact<std::string>();
      if (!s) throw ConfigError("'test_functions' must be an array of strings");
      c.test_functions.push_back(*s);
    }
  }
  c.seed = get_uint(root, "seed").value_or(0);
  c.output = get_string(root, "output").value_or(c.output);
  c.threads = get_uint(root, "threads").value_or(0);

  const toml::table* init = get_table(root, "initial");
  if (init == nullptr) throw ConfigError("missing required table [initial]");
  reject_unknown(*init, {"labels", "opinions"}, "[initial]");
  const toml::table* lt = get_table(*init, "labels");
  const toml::table* ot = get_table(*init, "opinions");
  if (lt == nullptr || ot == nullptr)
    throw ConfigError("[initial] needs both a labels and an opinions table");
  c.initial.labels = parse_labels(*lt);
  c.initial.opinions = parse_opinions(*ot);

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

}  // namespace mwlab
