// Copyright 2026 The liecoll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "liecoll/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace liecoll {

namespace {

std::string where(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.line < 0) return "";
  return "line " + std::to_string(mark.line + 1) + ": ";
}

[[noreturn]] void parse_error(const YAML::Node& node, const std::string& message) {
  fail(ErrorCode::kParse, where(node) + message);
}

[[noreturn]] void invalid(const YAML::Node& node, const std::string& message) {
  fail(ErrorCode::kValidation, where(node) + message);
}

/// Runs `body`, prefixing any library error with the node's line.
template <class F>
auto located(const YAML::Node& node, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    if (std::string(e.what()).rfind("line ", 0) == 0) throw;
    fail(e.code(), where(node) + e.what());
  }
}

void require_map(const YAML::Node& node, const std::string& what, const std::set<std::string>& keys) {
  if (!node.IsMap()) parse_error(node, what + " must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!keys.count(key)) invalid(kv.first, "unknown key '" + key + "' in " + what);
  }
}

double to_double(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) parse_error(node, what + " must be a number");
  double v = 0.0;
  if (!YAML::convert<double>::decode(node, v)) parse_error(node, what + " must be a number");
  if (!std::isfinite(v)) invalid(node, what + " must be finite");
  return v;
}

long long to_int(const YAML::Node& node, const std::string& what) {
  long long v = 0;
  if (!node.IsScalar() || !YAML::convert<long long>::decode(node, v)) parse_error(node, what + " must be an integer");
  return v;
}

bool to_bool(const YAML::Node& node, const std::string& what) {
  bool v = false;
  if (!node.IsScalar() || !YAML::convert<bool>::decode(node, v)) parse_error(node, what + " must be true or false");
  return v;
}

std::string to_string_value(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) parse_error(node, what + " must be a string");
  return node.as<std::string>();
}

Vector to_vector(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence()) parse_error(node, what + " must be a list of numbers");
  Vector v(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_double(node[i], what);
  return v;
}

Vector to_vector(const YAML::Node& node, const std::string& what, int size) {
  Vector v = to_vector(node, what);
  if (v.size() != size) {
    invalid(node, what + " needs " + std::to_string(size) + " entries, got " + std::to_string(v.size()));
  }
  return v;
}

Matrix to_matrix(const YAML::Node& node, const std::string& what) {
  if (!node.IsSequence() || node.size() == 0) parse_error(node, what + " must be a list of rows");
  const auto rows = static_cast<Eigen::Index>(node.size());
  Eigen::Index cols = -1;
  Matrix m;
  for (std::size_t r = 0; r < node.size(); ++r) {
    const Vector row = to_vector(node[r], what);
    if (cols < 0) {
      cols = row.size();
      m.resize(rows, cols);
    } else if (row.size() != cols) {
      invalid(node[r], what + " rows have different lengths");
    }
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

Formulation parse_formulation(const YAML::Node& node) {
  const std::string s = to_string_value(node, "formulation");
  if (s == "left-invariant") return Formulation::kLeftInvariant;
  if (s == "bi-invariant") return Formulation::kBiInvariant;
  invalid(node, "formulation must be 'left-invariant' or 'bi-invariant'");
}

const char* formulation_name(Formulation f) {
  return f == Formulation::kBiInvariant ? "bi-invariant" : "left-invariant";
}

PotentialFamily parse_family(const YAML::Node& node) {
  const std::string s = to_string_value(node, "potential family");
  for (auto f : {PotentialFamily::kZero, PotentialFamily::kInverseShifted, PotentialFamily::kGaussian,
                 PotentialFamily::kLinear}) {
    if (s == to_string(f)) return f;
  }
  invalid(node, "unknown potential family '" + s + "'");
}

PotentialSpec parse_spec(const YAML::Node& node, PotentialSpec spec) {
  if (node["family"]) spec.family = parse_family(node["family"]);
  if (node["gain"]) spec.gain = to_double(node["gain"], "gain");
  if (node["shape"]) spec.shape = to_double(node["shape"], "shape");
  located(node, [&] {
    spec.validate();
    return 0;
  });
  return spec;
}

Graph::Edge parse_edge(const YAML::Node& node) {
  if (!node.IsSequence() || node.size() != 2) parse_error(node, "an edge is a pair [j, k] of agent numbers");
  return {static_cast<int>(to_int(node[0], "edge")) - 1, static_cast<int>(to_int(node[1], "edge")) - 1};
}

GroupElement parse_position(const LieAlgebra& a, const YAML::Node& agent, const char* vec_key,
                            const char* mat_key) {
  const YAML::Node v = agent[vec_key];
  const YAML::Node m = agent[mat_key];
  if (v && m) invalid(agent, std::string("give either ") + vec_key + " or " + mat_key + ", not both");
  if (!v && !m) invalid(agent, std::string("agent needs ") + vec_key);
  if (v) {
    const Vector x = to_vector(v, vec_key, a.dim());
    return located(v, [&] { return a.exp(x); });
  }
  if (a.kind() == GroupKind::kAbelian) invalid(m, std::string(mat_key) + " is only valid for matrix groups");
  GroupElement g(to_matrix(m, mat_key));
  located(m, [&] {
    a.check_element(g, mat_key);
    return 0;
  });
  if (a.kind() == GroupKind::kSO3) {
    const Matrix& r = g.value();
    if ((r.transpose() * r - Matrix::Identity(3, 3)).norm() > 1e-9 || r.determinant() <= 0.0) {
      invalid(m, std::string(mat_key) + " is not a rotation matrix");
    }
  }
  return g;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string list(const Vector& v) {
  std::string out = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v(i));
  return out + "]";
}

std::string rows(const Matrix& m) {
  std::string out = "[";
  for (Eigen::Index r = 0; r < m.rows(); ++r) out += (r ? ", " : "") + list(m.row(r).transpose());
  return out + "]";
}

}  // namespace

LieAlgebra Scenario::algebra() const {
  LieAlgebra a = [&] {
    if (group == "so3") return LieAlgebra::so3();
    if (group == "abelian") {
      if (dimension < 1) fail(ErrorCode::kValidation, "abelian dimension must be positive");
      return LieAlgebra::abelian(dimension);
    }
    if (group == "generic") return LieAlgebra::generic_from_basis(basis);
    fail(ErrorCode::kValidation, "group must be 'so3', 'abelian' or 'generic'");
  }();
  return a.with_cut_margin(cut_margin);
}

Metric Scenario::metric() const {
  LieAlgebra a = algebra();
  const bool flag = metric_bi_invariant || formulation == Formulation::kBiInvariant;
  if (metric_identity) return Metric::identity(std::move(a), flag);
  return Metric(std::move(a), metric_matrix, flag);
}

Graph Scenario::graph() const { return Graph(static_cast<int>(agents.size()), edges); }

Problem Scenario::problem() const {
  Problem p{metric(), graph(), field, integrator};
  p.integrator.formulation = formulation;
  return p;
}

BoundaryConditions Scenario::boundary() const {
  BoundaryConditions bc;
  bc.t0 = t0;
  bc.t1 = t1;
  for (const auto& ag : agents) bc.agents.push_back({ag.start, ag.end, ag.start_velocity, ag.end_velocity});
  return bc;
}

SystemState Scenario::initial_state() const {
  const int n = algebra().dim();
  SystemState s;
  s.t = t0;
  for (const auto& ag : agents) {
    s.jets.push_back({ag.start, ag.start_velocity, ag.initial_xi1.value_or(Vector::Zero(n)),
                      ag.initial_xi2.value_or(Vector::Zero(n))});
  }
  return s;
}

void Scenario::validate() const {
  const Problem p = problem();
  const LieAlgebra& a = p.algebra();
  if (agents.empty()) fail(ErrorCode::kValidation, "scenario needs at least one agent");
  boundary().validate(a);
  for (const auto& ag : agents) {
    if (ag.initial_xi1) a.check_vector(*ag.initial_xi1, "initial_xi1");
    if (ag.initial_xi2) a.check_vector(*ag.initial_xi2, "initial_xi2");
  }
  field.uniform.validate();
  for (const auto& [edge, spec] : field.overrides) {
    if (!p.graph.connected(edge.first, edge.second)) {
      fail(ErrorCode::kValidation, "potential override for {" + std::to_string(edge.first + 1) + "," +
                                       std::to_string(edge.second + 1) + "} names a missing edge");
    }
    spec.validate();
  }
  if (!(field.fd_step > 0.0)) fail(ErrorCode::kValidation, "potential fd_step must be positive");
  field.geodesic.validate();
  integrator.validate();
  shooting.validate();
  oracle.validate();
  if (!(verify.h_fd > 0.0) || !(verify.h_fd_check > 0.0) || !(verify.residual_bound > 0.0)) {
    fail(ErrorCode::kValidation, "verify steps and bound must be positive");
  }
  if (!(cut_margin > 0.0 && cut_margin < 1.0)) fail(ErrorCode::kValidation, "cut_margin must be in (0, 1)");
}

Scenario load_scenario(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    fail(ErrorCode::kParse, "line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) fail(ErrorCode::kParse, "scenario must be a YAML mapping");
  require_map(root, "scenario",
              {"group", "dimension", "basis", "cut_margin", "metric", "bi_invariant", "formulation", "interval",
               "agents", "edges", "potential", "integrator", "geodesic", "shooting", "oracle", "verify",
               "output", "seed"});

  Scenario sc;
  if (!root["group"]) fail(ErrorCode::kValidation, "scenario needs a 'group'");
  sc.group = to_string_value(root["group"], "group");
  if (root["dimension"]) sc.dimension = static_cast<int>(to_int(root["dimension"], "dimension"));
  if (root["basis"]) {
    const YAML::Node b = root["basis"];
    if (!b.IsSequence()) parse_error(b, "basis must be a list of matrices");
    for (const auto& m : b) sc.basis.push_back(to_matrix(m, "basis matrix"));
  }
  if (sc.group == "generic" && sc.basis.empty()) invalid(root["group"], "a generic group needs a basis");
  if (root["cut_margin"]) sc.cut_margin = to_double(root["cut_margin"], "cut_margin");
  const LieAlgebra a = located(root["group"], [&] { return sc.algebra(); });
  const int n = a.dim();

  if (root["metric"]) {
    const YAML::Node m = root["metric"];
    if (m.IsScalar()) {
      if (m.as<std::string>() != "identity") invalid(m, "metric must be 'identity' or a matrix");
      sc.metric_identity = true;
    } else {
      sc.metric_identity = false;
      sc.metric_matrix = to_matrix(m, "metric");
    }
  }
  if (root["bi_invariant"]) sc.metric_bi_invariant = to_bool(root["bi_invariant"], "bi_invariant");
  if (root["formulation"]) sc.formulation = parse_formulation(root["formulation"]);
  located(root["metric"] ? root["metric"] : root["group"], [&] { return sc.metric(); });

  if (root["interval"]) {
    const Vector iv = to_vector(root["interval"], "interval", 2);
    sc.t0 = iv(0);
    sc.t1 = iv(1);
    if (!(sc.t1 > sc.t0)) invalid(root["interval"], "interval must satisfy a < b");
  }

  const YAML::Node agents = root["agents"];
  if (!agents || !agents.IsSequence() || agents.size() == 0) {
    fail(ErrorCode::kValidation, where(agents ? agents : root) + "scenario needs a non-empty 'agents' list");
  }
  for (const auto& node : agents) {
    require_map(node, "agent",
                {"start", "end", "start_matrix", "end_matrix", "start_velocity", "end_velocity", "initial_xi1",
                 "initial_xi2"});
    AgentConfig ag;
    ag.start = parse_position(a, node, "start", "start_matrix");
    ag.end = parse_position(a, node, "end", "end_matrix");
    ag.start_velocity = node["start_velocity"] ? to_vector(node["start_velocity"], "start_velocity", n) : Vector::Zero(n);
    ag.end_velocity = node["end_velocity"] ? to_vector(node["end_velocity"], "end_velocity", n) : Vector::Zero(n);
    if (node["initial_xi1"]) ag.initial_xi1 = to_vector(node["initial_xi1"], "initial_xi1", n);
    if (node["initial_xi2"]) ag.initial_xi2 = to_vector(node["initial_xi2"], "initial_xi2", n);
    try {
      a.log(a.between(ag.start, ag.end));
    } catch (const Error& e) {
      invalid(node, std::string("agent endpoints: ") + e.what());
    }
    sc.agents.push_back(std::move(ag));
  }

  if (root["edges"]) {
    const YAML::Node e = root["edges"];
    if (!e.IsSequence()) parse_error(e, "edges must be a list of pairs");
    for (const auto& pair : e) sc.edges.push_back(parse_edge(pair));
    located(e, [&] { return sc.graph(); });
  }

  if (const YAML::Node p = root["potential"]) {
    require_map(p, "potential", {"family", "gain", "shape", "gradient", "fd_step", "overrides"});
    sc.field.uniform = parse_spec(p, sc.field.uniform);
    if (p["gradient"]) {
      const std::string g = to_string_value(p["gradient"], "gradient");
      if (g == "analytic") {
        sc.field.gradient = GradientMethod::kAnalytic;
      } else if (g == "finite_difference") {
        sc.field.gradient = GradientMethod::kFiniteDifference;
      } else {
        invalid(p["gradient"], "gradient must be 'analytic' or 'finite_difference'");
      }
    }
    if (p["fd_step"]) sc.field.fd_step = to_double(p["fd_step"], "fd_step");
    if (const YAML::Node ov = p["overrides"]) {
      if (!ov.IsSequence()) parse_error(ov, "overrides must be a list");
      const Graph g = sc.graph();
      for (const auto& item : ov) {
        require_map(item, "override", {"edge", "family", "gain", "shape"});
        if (!item["edge"]) invalid(item, "override needs an 'edge'");
        const auto [j, k] = parse_edge(item["edge"]);
        if (j < 0 || k < 0 || j >= g.agent_count() || k >= g.agent_count() || !g.connected(j, k)) {
          invalid(item["edge"], "override names a missing edge");
        }
        sc.field.overrides[std::minmax(j, k)] = parse_spec(item, sc.field.uniform);
      }
    }
  }

  if (const YAML::Node in = root["integrator"]) {
    require_map(in, "integrator", {"step", "relative_pose"});
    if (in["step"]) sc.integrator.step = to_double(in["step"], "integrator step");
    if (in["relative_pose"]) {
      const std::string s = to_string_value(in["relative_pose"], "relative_pose");
      if (s == "recompute") {
        sc.integrator.relative_pose = RelativePosePolicy::kRecomputeFromG;
      } else if (s == "ode") {
        sc.integrator.relative_pose = RelativePosePolicy::kIntegrateOde;
      } else {
        invalid(in["relative_pose"], "relative_pose must be 'recompute' or 'ode'");
      }
    }
  }
  if (const YAML::Node g = root["geodesic"]) {
    require_map(g, "geodesic", {"step", "log_tolerance", "max_newton_iterations", "closed_form"});
    auto& gs = sc.field.geodesic;
    if (g["step"]) gs.step = to_double(g["step"], "geodesic step");
    if (g["log_tolerance"]) gs.log_tolerance = to_double(g["log_tolerance"], "log_tolerance");
    if (g["max_newton_iterations"]) {
      gs.max_newton_iterations = static_cast<int>(to_int(g["max_newton_iterations"], "max_newton_iterations"));
    }
    if (g["closed_form"]) gs.closed_form = to_bool(g["closed_form"], "closed_form");
  }
  if (const YAML::Node s = root["shooting"]) {
    require_map(s, "shooting",
                {"tolerance", "max_iterations", "damping", "jacobian_step", "multistart", "multistart_noise"});
    auto& ss = sc.shooting;
    if (s["tolerance"]) ss.tolerance = to_double(s["tolerance"], "shooting tolerance");
    if (s["max_iterations"]) ss.max_iterations = static_cast<int>(to_int(s["max_iterations"], "max_iterations"));
    if (s["damping"]) ss.damping = to_double(s["damping"], "damping");
    if (s["jacobian_step"]) ss.jacobian_step = to_double(s["jacobian_step"], "jacobian_step");
    if (s["multistart"]) ss.multistart = static_cast<int>(to_int(s["multistart"], "multistart"));
    if (s["multistart_noise"]) ss.multistart_noise = to_double(s["multistart_noise"], "multistart_noise");
  }
  if (const YAML::Node o = root["oracle"]) {
    require_map(o, "oracle", {"segments", "tolerance", "max_iterations", "fd_step", "armijo", "perturbation"});
    auto& os = sc.oracle;
    if (o["segments"]) os.segments = static_cast<int>(to_int(o["segments"], "segments"));
    if (o["tolerance"]) os.tolerance = to_double(o["tolerance"], "oracle tolerance");
    if (o["max_iterations"]) os.max_iterations = static_cast<int>(to_int(o["max_iterations"], "max_iterations"));
    if (o["fd_step"]) os.fd_step = to_double(o["fd_step"], "oracle fd_step");
    if (o["armijo"]) os.armijo = to_double(o["armijo"], "armijo");
    if (o["perturbation"]) os.perturbation = to_double(o["perturbation"], "perturbation");
  }
  if (const YAML::Node v = root["verify"]) {
    require_map(v, "verify", {"h_fd", "h_fd_check", "residual_bound"});
    if (v["h_fd"]) sc.verify.h_fd = to_double(v["h_fd"], "h_fd");
    if (v["h_fd_check"]) sc.verify.h_fd_check = to_double(v["h_fd_check"], "h_fd_check");
    if (v["residual_bound"]) sc.verify.residual_bound = to_double(v["residual_bound"], "residual_bound");
  }
  if (const YAML::Node o = root["output"]) {
    require_map(o, "output", {"directory"});
    if (o["directory"]) sc.output_directory = to_string_value(o["directory"], "output directory");
  }
  if (root["seed"]) {
    const long long seed = to_int(root["seed"], "seed");
    if (seed < 0) invalid(root["seed"], "seed must be >= 0");
    sc.seed = static_cast<std::uint64_t>(seed);
  }
  sc.shooting.seed = sc.seed;
  sc.validate();
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  const LieAlgebra a = sc.algebra();
  std::ostringstream os;
  os << "group: " << sc.group << "\n";
  if (sc.group == "abelian") os << "dimension: " << sc.dimension << "\n";
  if (sc.group == "generic") {
    os << "basis:\n";
    for (const auto& b : sc.basis) os << "  - " << rows(b) << "\n";
  }
  os << "cut_margin: " << num(sc.cut_margin) << "\n";
  os << "metric: " << (sc.metric_identity ? std::string("identity") : rows(sc.metric_matrix)) << "\n";
  os << "bi_invariant: " << (sc.metric_bi_invariant ? "true" : "false") << "\n";
  os << "formulation: " << formulation_name(sc.formulation) << "\n";
  os << "interval: [" << num(sc.t0) << ", " << num(sc.t1) << "]\n";
  os << "agents:\n";
  const bool matrix_group = a.kind() != GroupKind::kAbelian;
  for (const auto& ag : sc.agents) {
    if (matrix_group) {
      os << "  - start_matrix: " << rows(ag.start.value()) << "\n";
      os << "    end_matrix: " << rows(ag.end.value()) << "\n";
    } else {
      os << "  - start: " << list(ag.start.value().col(0)) << "\n";
      os << "    end: " << list(ag.end.value().col(0)) << "\n";
    }
    os << "    start_velocity: " << list(ag.start_velocity) << "\n";
    os << "    end_velocity: " << list(ag.end_velocity) << "\n";
    if (ag.initial_xi1) os << "    initial_xi1: " << list(*ag.initial_xi1) << "\n";
    if (ag.initial_xi2) os << "    initial_xi2: " << list(*ag.initial_xi2) << "\n";
  }
  os << "edges: [";
  for (std::size_t i = 0; i < sc.edges.size(); ++i) {
    os << (i ? ", " : "") << "[" << sc.edges[i].first + 1 << ", " << sc.edges[i].second + 1 << "]";
  }
  os << "]\n";
  const auto& f = sc.field;
  os << "potential:\n";
  os << "  family: " << to_string(f.uniform.family) << "\n";
  os << "  gain: " << num(f.uniform.gain) << "\n";
  os << "  shape: " << num(f.uniform.shape) << "\n";
  os << "  gradient: " << (f.gradient == GradientMethod::kAnalytic ? "analytic" : "finite_difference") << "\n";
  os << "  fd_step: " << num(f.fd_step) << "\n";
  if (!f.overrides.empty()) {
    os << "  overrides:\n";
    for (const auto& [edge, spec] : f.overrides) {
      os << "    - edge: [" << edge.first + 1 << ", " << edge.second + 1 << "]\n";
      os << "      family: " << to_string(spec.family) << "\n";
      os << "      gain: " << num(spec.gain) << "\n";
      os << "      shape: " << num(spec.shape) << "\n";
    }
  }
  os << "integrator:\n";
  os << "  step: " << num(sc.integrator.step) << "\n";
  os << "  relative_pose: "
     << (sc.integrator.relative_pose == RelativePosePolicy::kIntegrateOde ? "ode" : "recompute") << "\n";
  const auto& g = f.geodesic;
  os << "geodesic:\n";
  os << "  step: " << num(g.step) << "\n";
  os << "  log_tolerance: " << num(g.log_tolerance) << "\n";
  os << "  max_newton_iterations: " << g.max_newton_iterations << "\n";
  os << "  closed_form: " << (g.closed_form ? "true" : "false") << "\n";
  const auto& s = sc.shooting;
  os << "shooting:\n";
  os << "  tolerance: " << num(s.tolerance) << "\n";
  os << "  max_iterations: " << s.max_iterations << "\n";
  os << "  damping: " << num(s.damping) << "\n";
  os << "  jacobian_step: " << num(s.jacobian_step) << "\n";
  os << "  multistart: " << s.multistart << "\n";
  os << "  multistart_noise: " << num(s.multistart_noise) << "\n";
  const auto& o = sc.oracle;
  os << "oracle:\n";
  os << "  segments: " << o.segments << "\n";
  os << "  tolerance: " << num(o.tolerance) << "\n";
  os << "  max_iterations: " << o.max_iterations << "\n";
  os << "  fd_step: " << num(o.fd_step) << "\n";
  os << "  armijo: " << num(o.armijo) << "\n";
  os << "  perturbation: " << num(o.perturbation) << "\n";
  os << "verify:\n";
  os << "  h_fd: " << num(sc.verify.h_fd) << "\n";
  os << "  h_fd_check: " << num(sc.verify.h_fd_check) << "\n";
  os << "  residual_bound: " << num(sc.verify.residual_bound) << "\n";
  os << "output:\n";
  os << "  directory: " << YAML::Dump(YAML::Node(sc.output_directory)) << "\n";
  os << "seed: " << sc.seed << "\n";
  return os.str();
}

}  // namespace liecoll
