// Scenario document: JSON, see docs/scenario-format.md.
#include <fstream>
#include <sstream>

#include "ahmp/bench.hpp"
#include "ahmp/error.hpp"

namespace ahmp {

using nlohmann::json;

SchemaError::SchemaError(std::vector<FieldError> errors)
  : Error([&] {
      std::string msg = "scenario has " + std::to_string(errors.size()) + " error(s)";
      for (const FieldError& e : errors)
        msg += "\n  " + e.field + ": " + e.reason;
      return msg;
    }()),
    errors_(std::move(errors))
{}

bool GoalRule::operator==(const GoalRule& other) const
{
  if (mode != other.mode || count != other.count || seed != other.seed ||
      centers != other.centers || spread != other.spread ||
      goals.size() != other.goals.size())
    return false;
  for (std::size_t i = 0; i < goals.size(); ++i)
  {
    if (goals[i].index() != other.goals[i].index())
      return false;
    if (const auto* q = std::get_if<Configuration>(&goals[i]))
    {
      if (!(*q == std::get<Configuration>(other.goals[i])))
        return false;
    }
    else if (std::get<Pose3>(goals[i]).position != std::get<Pose3>(other.goals[i]).position)
    {
      return false;
    }
  }
  return true;
}

bool Scenario::operator==(const Scenario& other) const
{
  return chain == other.chain && limits == other.limits &&
         environment == other.environment && roadmap == other.roadmap &&
         rrt == other.rrt && bayes_net == other.bayes_net &&
         evidence_schedule == other.evidence_schedule && planner == other.planner &&
         start == other.start && goals == other.goals && matrix == other.matrix;
}

std::vector<std::size_t> ExperimentMatrix::effective_max_samples() const
{
  std::vector<std::size_t> out = max_samples;
  if (include_30k && std::find(out.begin(), out.end(), 30000) == out.end())
    out.push_back(30000);
  return out;
}

namespace {

// Collects schema errors while walking the document; getters return a
// fallback value after recording a problem so parsing can continue.
class Reader
{
public:
  std::vector<FieldError> errors;

  void fail(const std::string& where, const std::string& why)
  {
    errors.push_back({where, why});
  }

  const json* child(const json& obj, const std::string& where, const char* key, bool required)
  {
    if (!obj.is_object())
    {
      fail(where, "expected an object");
      return nullptr;
    }
    const auto it = obj.find(key);
    if (it == obj.end())
    {
      if (required)
        fail(where + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  double real(const json& v, const std::string& where, double fallback = 0.0)
  {
    if (!v.is_number())
    {
      fail(where, "expected a number");
      return fallback;
    }
    return v.get<double>();
  }

  double positive(const json& v, const std::string& where, double fallback)
  {
    const double x = real(v, where, fallback);
    if (v.is_number() && !(x > 0.0))
    {
      fail(where, "must be positive");
      return fallback;
    }
    return x;
  }

  double nonnegative(const json& v, const std::string& where, double fallback)
  {
    const double x = real(v, where, fallback);
    if (v.is_number() && !(x >= 0.0))
    {
      fail(where, "must be nonnegative");
      return fallback;
    }
    return x;
  }

  std::uint64_t unsigned_int(const json& v, const std::string& where, std::uint64_t fallback)
  {
    if (v.is_number_unsigned())
      return v.get<std::uint64_t>();
    if (v.is_number_integer())
    {
      fail(where, "must be nonnegative");
      return fallback;
    }
    fail(where, "expected a nonnegative integer");
    return fallback;
  }

  std::size_t positive_int(const json& v, const std::string& where, std::size_t fallback)
  {
    const std::uint64_t x = unsigned_int(v, where, fallback);
    if (v.is_number_unsigned() && x == 0)
    {
      fail(where, "must be positive");
      return fallback;
    }
    return static_cast<std::size_t>(x);
  }

  bool boolean(const json& v, const std::string& where, bool fallback)
  {
    if (!v.is_boolean())
    {
      fail(where, "expected true or false");
      return fallback;
    }
    return v.get<bool>();
  }

  std::string string(const json& v, const std::string& where)
  {
    if (!v.is_string())
    {
      fail(where, "expected a string");
      return {};
    }
    return v.get<std::string>();
  }

  template <std::size_t N>
  std::array<double, N> reals(const json& v, const std::string& where)
  {
    std::array<double, N> out{};
    if (!v.is_array() || v.size() != N)
    {
      fail(where, "expected an array of " + std::to_string(N) + " numbers");
      return out;
    }
    for (std::size_t i = 0; i < N; ++i)
      out[i] = real(v[i], where + "/" + std::to_string(i));
    return out;
  }

  Eigen::Vector3d vec3(const json& v, const std::string& where)
  {
    const auto a = reals<3>(v, where);
    return {a[0], a[1], a[2]};
  }

  Configuration config(const json& v, const std::string& where)
  {
    return Configuration(reals<kDof>(v, where));
  }

  template <class F>
  void each(const json& v, const std::string& where, F&& f)
  {
    if (!v.is_array())
    {
      fail(where, "expected an array");
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      f(v[i], where + "/" + std::to_string(i));
  }

  // Runs a constructor that validates by throwing ContractViolation.
  template <class F>
  bool guard(const std::string& where, F&& f)
  {
    try
    {
      f();
      return true;
    }
    catch (const ContractViolation& e)
    {
      fail(where, e.what());
      return false;
    }
  }
};

KinematicChain read_chain(Reader& r, const json& v, const std::string& at)
{
  KinematicChain chain = KinematicChain::default_chain();
  if (!v.is_object())
  {
    r.fail(at, "expected an object");
    return chain;
  }
  auto lengths = chain.link_lengths();
  auto base_axis = chain.base_axis();
  auto axes = chain.joint_axes();
  auto mount = chain.mount_offset();
  if (const json* x = r.child(v, at, "link_lengths", false))
    lengths = r.reals<kArmJoints>(*x, at + "/link_lengths");
  if (const json* x = r.child(v, at, "base_axis", false))
    base_axis = r.vec3(*x, at + "/base_axis");
  if (const json* x = r.child(v, at, "joint_axes", false))
  {
    if (!x->is_array() || x->size() != kArmJoints)
      r.fail(at + "/joint_axes", "expected 4 axes");
    else
      for (std::size_t i = 0; i < kArmJoints; ++i)
        axes[i] = r.vec3((*x)[i], at + "/joint_axes/" + std::to_string(i));
  }
  if (const json* x = r.child(v, at, "mount_offset", false))
    mount = r.vec3(*x, at + "/mount_offset");
  r.guard(at, [&] { chain = KinematicChain(lengths, base_axis, axes, mount); });
  return chain;
}

JointLimits read_limits(Reader& r, const json& v, const std::string& at)
{
  JointLimits limits = JointLimits::default_limits();
  const json* lo = r.child(v, at, "lower", true);
  const json* hi = r.child(v, at, "upper", true);
  if (!lo || !hi)
    return limits;
  const auto lower = r.reals<kDof>(*lo, at + "/lower");
  const auto upper = r.reals<kDof>(*hi, at + "/upper");
  for (std::size_t k = 0; k < kDof; ++k)
    if (!(lower[k] < upper[k]))
      r.fail(at + "/upper/" + std::to_string(k), "must exceed the lower limit");
  r.guard(at, [&] { limits = JointLimits(lower, upper); });
  return limits;
}

Obstacle read_obstacle(Reader& r, const json& v, const std::string& at)
{
  Obstacle fallback = Obstacle::sphere(Eigen::Vector3d::Zero(), 1.0);
  const json* type = r.child(v, at, "type", true);
  if (!type)
    return fallback;
  const std::string kind = r.string(*type, at + "/type");
  if (kind == "sphere")
  {
    const json* c = r.child(v, at, "center", true);
    const json* rad = r.child(v, at, "radius", true);
    if (!c || !rad)
      return fallback;
    const Eigen::Vector3d center = r.vec3(*c, at + "/center");
    const double radius = r.positive(*rad, at + "/radius", 1.0);
    r.guard(at, [&] { fallback = Obstacle::sphere(center, radius); });
  }
  else if (kind == "box")
  {
    const json* lo = r.child(v, at, "min", true);
    const json* hi = r.child(v, at, "max", true);
    if (!lo || !hi)
      return fallback;
    const Eigen::Vector3d mn = r.vec3(*lo, at + "/min");
    const Eigen::Vector3d mx = r.vec3(*hi, at + "/max");
    r.guard(at, [&] { fallback = Obstacle::box(mn, mx); });
  }
  else if (type->is_string())
  {
    r.fail(at + "/type", "unknown obstacle type '" + kind + "'");
  }
  return fallback;
}

Environment read_environment(Reader& r, const json& v, const std::string& at)
{
  Environment env = Environment::default_tank();
  if (!v.is_object())
  {
    r.fail(at, "expected an object");
    return env;
  }
  Box bounds = env.bounds();
  if (const json* b = r.child(v, at, "bounds", false))
  {
    const json* lo = r.child(*b, at + "/bounds", "min", true);
    const json* hi = r.child(*b, at + "/bounds", "max", true);
    if (lo && hi)
      bounds = {r.vec3(*lo, at + "/bounds/min"), r.vec3(*hi, at + "/bounds/max")};
  }
  std::vector<Obstacle> obstacles;
  if (const json* o = r.child(v, at, "obstacles", false))
    r.each(*o, at + "/obstacles", [&](const json& item, const std::string& where) {
      obstacles.push_back(read_obstacle(r, item, where));
    });
  double resolution = env.check_resolution();
  if (const json* x = r.child(v, at, "check_resolution", false))
    resolution = r.positive(*x, at + "/check_resolution", resolution);
  r.guard(at + "/bounds", [&] { env = Environment(bounds, obstacles, resolution); });
  return env;
}

BayesNet read_bayes_net(Reader& r, const json& v, const std::string& at)
{
  const json* nodes = r.child(v, at, "nodes", true);
  if (!nodes)
    return BayesNet::default_net();
  std::vector<NodeSpec> specs;
  r.each(*nodes, at + "/nodes", [&](const json& n, const std::string& where) {
    NodeSpec spec;
    if (const json* x = r.child(n, where, "name", true))
      spec.name = r.string(*x, where + "/name");
    if (const json* x = r.child(n, where, "states", true))
      r.each(*x, where + "/states", [&](const json& s, const std::string& w) {
        spec.states.push_back(r.string(s, w));
      });
    if (const json* x = r.child(n, where, "parents", false))
      r.each(*x, where + "/parents", [&](const json& s, const std::string& w) {
        spec.parents.push_back(r.string(s, w));
      });
    if (const json* x = r.child(n, where, "cpt", true))
      r.each(*x, where + "/cpt", [&](const json& row, const std::string& w) {
        std::vector<double> values;
        r.each(row, w, [&](const json& p, const std::string& pw) {
          values.push_back(r.real(p, pw));
        });
        spec.cpt.push_back(std::move(values));
      });
    specs.push_back(std::move(spec));
  });
  BayesNet net(std::move(specs));
  for (const Violation& violation : net.violations())
    r.fail(at, violation.message);
  return net;
}

std::vector<Evidence> read_evidence_schedule(Reader& r,
                                             const json& v,
                                             const std::string& at,
                                             const BayesNet& net)
{
  std::vector<Evidence> schedule;
  r.each(v, at, [&](const json& entry, const std::string& where) {
    Evidence ev;
    if (!entry.is_object())
    {
      r.fail(where, "expected an object of node: state pairs");
      schedule.push_back(ev);
      return;
    }
    for (const auto& [name, state] : entry.items())
    {
      const std::string s = r.string(state, where + "/" + name);
      if (!net.has_node(name))
      {
        r.fail(where + "/" + name, "unknown Bayesian network node");
        continue;
      }
      const auto& states = net.nodes()[net.index_of(name)].states;
      if (std::find(states.begin(), states.end(), s) == states.end())
        r.fail(where + "/" + name, "unknown state '" + s + "'");
      ev[name] = s;
    }
    schedule.push_back(std::move(ev));
  });
  return schedule;
}

PlannerConfig read_planner(Reader& r, const json& v, const std::string& at)
{
  PlannerConfig cfg;
  if (!v.is_object())
  {
    r.fail(at, "expected an object");
    return cfg;
  }
  if (const json* x = r.child(v, at, "tau", false))
    cfg.hms.tau = r.nonnegative(*x, at + "/tau", cfg.hms.tau);
  if (const json* x = r.child(v, at, "lambda", false))
    cfg.hms.lambda = r.nonnegative(*x, at + "/lambda", cfg.hms.lambda);
  if (const json* x = r.child(v, at, "alpha", false))
    cfg.hms.alpha = r.nonnegative(*x, at + "/alpha", cfg.hms.alpha);
  if (const json* x = r.child(v, at, "clearance_threshold", false))
    cfg.hms.clearance_threshold =
        r.nonnegative(*x, at + "/clearance_threshold", cfg.hms.clearance_threshold);
  if (const json* x = r.child(v, at, "revalidate_cached", false))
    cfg.revalidate_cached = r.boolean(*x, at + "/revalidate_cached", true);
  if (const json* w = r.child(v, at, "cost_weights", false))
  {
    const std::string base = at + "/cost_weights";
    if (const json* x = r.child(*w, base, "distance", false))
      cfg.cost_weights.distance = r.nonnegative(*x, base + "/distance", 1.0);
    if (const json* x = r.child(*w, base, "uncertainty", false))
      cfg.cost_weights.uncertainty = r.nonnegative(*x, base + "/uncertainty", 0.0);
    if (const json* x = r.child(*w, base, "energy", false))
      cfg.cost_weights.energy = r.nonnegative(*x, base + "/energy", 0.0);
    if (const json* x = r.child(*w, base, "time", false))
      cfg.cost_weights.time = r.nonnegative(*x, base + "/time", 0.0);
    const CostWeights& c = cfg.cost_weights;
    if (c.distance == 0.0 && c.uncertainty == 0.0 && c.energy == 0.0 && c.time == 0.0)
      r.fail(base, "at least one weight must be positive");
  }
  return cfg;
}

GoalRule read_goals(Reader& r, const json& v, const std::string& at, const JointLimits& limits)
{
  GoalRule rule;
  const json* mode = r.child(v, at, "mode", true);
  if (!mode)
    return rule;
  const std::string m = r.string(*mode, at + "/mode");
  if (m == "explicit")
  {
    rule.mode = GoalRule::Mode::Explicit;
    if (const json* list = r.child(v, at, "list", true))
    {
      r.each(*list, at + "/list", [&](const json& item, const std::string& where) {
        if (const json* q = r.child(item, where, "configuration", false))
        {
          const Configuration c = r.config(*q, where + "/configuration");
          if (!limits.contains(c))
            r.fail(where + "/configuration", "outside joint limits");
          rule.goals.emplace_back(c);
        }
        else if (const json* p = r.child(item, where, "position", false))
        {
          rule.goals.emplace_back(Pose3{r.vec3(*p, where + "/position")});
        }
        else
        {
          r.fail(where, "expected 'configuration' or 'position'");
        }
      });
      if (list->is_array() && list->empty())
        r.fail(at + "/list", "needs at least one goal");
    }
    rule.count = rule.goals.size();
    return rule;
  }

  if (m == "random")
    rule.mode = GoalRule::Mode::Random;
  else if (m == "clustered")
    rule.mode = GoalRule::Mode::Clustered;
  else
  {
    if (mode->is_string())
      r.fail(at + "/mode", "expected 'explicit', 'random' or 'clustered'");
    return rule;
  }
  if (const json* x = r.child(v, at, "count", true))
    rule.count = r.positive_int(*x, at + "/count", rule.count);
  if (const json* x = r.child(v, at, "seed", false))
    rule.seed = r.unsigned_int(*x, at + "/seed", 0);
  if (rule.mode == GoalRule::Mode::Clustered)
  {
    if (const json* x = r.child(v, at, "spread", false))
      rule.spread = r.nonnegative(*x, at + "/spread", rule.spread);
    if (const json* c = r.child(v, at, "centers", true))
    {
      r.each(*c, at + "/centers", [&](const json& q, const std::string& where) {
        const Configuration center = r.config(q, where);
        if (!limits.contains(center))
          r.fail(where, "outside joint limits");
        rule.centers.push_back(center);
      });
      if (c->is_array() && c->empty())
        r.fail(at + "/centers", "needs at least one center");
    }
  }
  return rule;
}

ExperimentMatrix read_matrix(Reader& r, const json& v, const std::string& at)
{
  ExperimentMatrix m;
  if (const json* x = r.child(v, at, "planners", true))
  {
    r.each(*x, at + "/planners", [&](const json& p, const std::string& where) {
      const std::string name = r.string(p, where);
      if (name != kPlannerPrmAstar && name != kPlannerRrt && name != kPlannerAhmp)
        r.fail(where, "unknown planner '" + name + "'");
      m.planners.push_back(name);
    });
    if (x->is_array() && x->empty())
      r.fail(at + "/planners", "must not be empty");
  }
  if (const json* x = r.child(v, at, "max_samples", true))
  {
    r.each(*x, at + "/max_samples", [&](const json& s, const std::string& where) {
      const std::size_t n = r.positive_int(s, where, 2);
      if (s.is_number_unsigned() && n < 2)
        r.fail(where, "must be at least 2");
      m.max_samples.push_back(n);
    });
    if (x->is_array() && x->empty())
      r.fail(at + "/max_samples", "must not be empty");
  }
  if (const json* x = r.child(v, at, "goal_counts", true))
  {
    r.each(*x, at + "/goal_counts", [&](const json& s, const std::string& where) {
      m.goal_counts.push_back(r.positive_int(s, where, 1));
    });
    if (x->is_array() && x->empty())
      r.fail(at + "/goal_counts", "must not be empty");
  }
  if (const json* x = r.child(v, at, "seeds", true))
  {
    r.each(*x, at + "/seeds", [&](const json& s, const std::string& where) {
      m.seeds.push_back(r.unsigned_int(s, where, 0));
    });
    if (x->is_array() && x->empty())
      r.fail(at + "/seeds", "must not be empty");
  }
  if (const json* x = r.child(v, at, "include_30k", false))
    m.include_30k = r.boolean(*x, at + "/include_30k", false);
  return m;
}

json vec_json(const Eigen::Vector3d& v)
{
  return json::array({v.x(), v.y(), v.z()});
}

json config_json(const Configuration& q)
{
  return json(q.values());
}

} // namespace

Scenario parse_scenario(const json& doc)
{
  Reader r;
  Scenario s;
  if (!doc.is_object())
    throw SchemaError(std::vector<FieldError>{{"", "scenario must be a JSON object"}});

  if (const json* x = r.child(doc, "", "chain", false))
    s.chain = read_chain(r, *x, "/chain");
  if (const json* x = r.child(doc, "", "limits", false))
    s.limits = read_limits(r, *x, "/limits");

  DistanceWeights weights;
  if (const json* x = r.child(doc, "", "distance_weights", false))
  {
    const auto w = r.reals<kDof>(*x, "/distance_weights");
    r.guard("/distance_weights", [&] { weights = DistanceWeights(w); });
  }
  if (const json* x = r.child(doc, "", "environment", false))
    s.environment = read_environment(r, *x, "/environment");
  s.environment = s.environment.with_weights(weights);

  if (const json* x = r.child(doc, "", "roadmap", false))
  {
    if (const json* k = r.child(*x, "/roadmap", "k_neighbors", false))
      s.roadmap.k_neighbors = r.positive_int(*k, "/roadmap/k_neighbors", 10);
    if (const json* f = r.child(*x, "/roadmap", "max_rejection_factor", false))
      s.roadmap.max_rejection_factor =
          r.positive_int(*f, "/roadmap/max_rejection_factor", 50);
  }
  if (const json* x = r.child(doc, "", "rrt", false))
  {
    const std::string at = "/rrt";
    if (const json* v = r.child(*x, at, "max_iter", false))
      s.rrt.max_iter = r.positive_int(*v, at + "/max_iter", s.rrt.max_iter);
    if (const json* v = r.child(*x, at, "step_size", false))
      s.rrt.step_size = r.positive(*v, at + "/step_size", s.rrt.step_size);
    if (const json* v = r.child(*x, at, "goal_bias", false))
    {
      s.rrt.goal_bias = r.nonnegative(*v, at + "/goal_bias", s.rrt.goal_bias);
      if (s.rrt.goal_bias > 1.0)
      {
        r.fail(at + "/goal_bias", "must lie in [0, 1]");
        s.rrt.goal_bias = 0.05;
      }
    }
    if (const json* v = r.child(*x, at, "goal_tolerance", false))
      s.rrt.goal_tolerance = r.positive(*v, at + "/goal_tolerance", s.rrt.goal_tolerance);
  }

  if (const json* x = r.child(doc, "", "bayes_net", false))
    s.bayes_net = read_bayes_net(r, *x, "/bayes_net");
  if (!s.bayes_net.has_node(kPathSuccessNode))
    r.fail("/bayes_net", "network needs a '" + kPathSuccessNode + "' node");
  if (const json* x = r.child(doc, "", "evidence_schedule", false))
    s.evidence_schedule = read_evidence_schedule(r, *x, "/evidence_schedule", s.bayes_net);
  if (const json* x = r.child(doc, "", "planner", false))
    s.planner = read_planner(r, *x, "/planner");

  if (const json* x = r.child(doc, "", "start", true))
  {
    s.start = r.config(*x, "/start");
    if (!s.limits.contains(s.start))
      r.fail("/start", "outside joint limits");
  }
  if (const json* x = r.child(doc, "", "goals", true))
    s.goals = read_goals(r, *x, "/goals", s.limits);
  if (const json* x = r.child(doc, "", "matrix", true))
    s.matrix = read_matrix(r, *x, "/matrix");

  if (!r.errors.empty())
    throw SchemaError(std::move(r.errors));
  return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open scenario file " + path.string());
  json doc;
  try
  {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  }
  catch (const json::parse_error& e)
  {
    throw SchemaError(std::vector<FieldError>{{"", std::string("not valid JSON: ") + e.what()}});
  }
  return parse_scenario(doc);
}

json scenario_to_json(const Scenario& s)
{
  json doc;
  const KinematicChain& c = s.chain;
  json axes = json::array();
  for (const auto& a : c.joint_axes())
    axes.push_back(vec_json(a));
  doc["chain"] = {{"link_lengths", c.link_lengths()},
                  {"base_axis", vec_json(c.base_axis())},
                  {"joint_axes", axes},
                  {"mount_offset", vec_json(c.mount_offset())}};
  doc["limits"] = {{"lower", s.limits.lower()}, {"upper", s.limits.upper()}};
  doc["distance_weights"] = s.environment.weights().values();

  json obstacles = json::array();
  for (const Obstacle& o : s.environment.obstacles())
  {
    if (const auto* sp = std::get_if<Sphere>(&o.shape()))
      obstacles.push_back(
          {{"type", "sphere"}, {"center", vec_json(sp->center)}, {"radius", sp->radius}});
    else
    {
      const Box& b = std::get<Box>(o.shape());
      obstacles.push_back({{"type", "box"}, {"min", vec_json(b.min)}, {"max", vec_json(b.max)}});
    }
  }
  doc["environment"] = {
      {"bounds",
       {{"min", vec_json(s.environment.bounds().min)},
        {"max", vec_json(s.environment.bounds().max)}}},
      {"obstacles", obstacles},
      {"check_resolution", s.environment.check_resolution()}};

  doc["roadmap"] = {{"k_neighbors", s.roadmap.k_neighbors},
                    {"max_rejection_factor", s.roadmap.max_rejection_factor}};
  doc["rrt"] = {{"max_iter", s.rrt.max_iter},
                {"step_size", s.rrt.step_size},
                {"goal_bias", s.rrt.goal_bias},
                {"goal_tolerance", s.rrt.goal_tolerance}};

  json nodes = json::array();
  for (const NodeSpec& n : s.bayes_net.nodes())
    nodes.push_back(
        {{"name", n.name}, {"states", n.states}, {"parents", n.parents}, {"cpt", n.cpt}});
  doc["bayes_net"] = {{"nodes", nodes}};
  json schedule = json::array();
  for (const Evidence& e : s.evidence_schedule)
    schedule.push_back(json(e));
  doc["evidence_schedule"] = schedule;

  const PlannerConfig& p = s.planner;
  doc["planner"] = {{"tau", p.hms.tau},
                    {"lambda", p.hms.lambda},
                    {"alpha", p.hms.alpha},
                    {"clearance_threshold", p.hms.clearance_threshold},
                    {"revalidate_cached", p.revalidate_cached},
                    {"cost_weights",
                     {{"distance", p.cost_weights.distance},
                      {"uncertainty", p.cost_weights.uncertainty},
                      {"energy", p.cost_weights.energy},
                      {"time", p.cost_weights.time}}}};
  doc["start"] = config_json(s.start);

  json goals;
  switch (s.goals.mode)
  {
    case GoalRule::Mode::Explicit:
    {
      json list = json::array();
      for (const GoalSpec& g : s.goals.goals)
      {
        if (const auto* q = std::get_if<Configuration>(&g))
          list.push_back({{"configuration", config_json(*q)}});
        else
          list.push_back({{"position", vec_json(std::get<Pose3>(g).position)}});
      }
      goals = {{"mode", "explicit"}, {"list", list}};
      break;
    }
    case GoalRule::Mode::Random:
      goals = {{"mode", "random"}, {"count", s.goals.count}, {"seed", s.goals.seed}};
      break;
    case GoalRule::Mode::Clustered:
    {
      json centers = json::array();
      for (const Configuration& q : s.goals.centers)
        centers.push_back(config_json(q));
      goals = {{"mode", "clustered"},
               {"count", s.goals.count},
               {"seed", s.goals.seed},
               {"spread", s.goals.spread},
               {"centers", centers}};
      break;
    }
  }
  doc["goals"] = goals;
  doc["matrix"] = {{"planners", s.matrix.planners},
                   {"max_samples", s.matrix.max_samples},
                   {"goal_counts", s.matrix.goal_counts},
                   {"seeds", s.matrix.seeds},
                   {"include_30k", s.matrix.include_30k}};
  return doc;
}

} // namespace ahmp
