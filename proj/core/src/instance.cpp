#include "mirp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mirp/rng.hpp"

namespace mirp {

using nlohmann::json;

namespace {

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

void require(bool cond, const std::string& path, const std::string& what) {
  if (!cond) throw InstanceValidationError(path, what);
}

void check_series(const std::vector<double>& v, int horizon, const std::string& path, bool nonneg) {
  require(static_cast<int>(v.size()) == horizon, path,
          "expected " + std::to_string(horizon) + " entries, got " + std::to_string(v.size()));
  for (std::size_t t = 0; t < v.size(); ++t) {
    require(std::isfinite(v[t]), idx(path, t), "not finite");
    if (nonneg) require(v[t] >= 0.0, idx(path, t), "must be nonnegative");
  }
}

const json& at(const json& j, const char* key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw InstanceParseError(path + ": missing key '" + key + "'");
  return *it;
}

template <class T>
T get(const json& j, const char* key, const std::string& path) {
  const auto& v = at(j, key, path);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw InstanceParseError(path + "." + key + ": " + e.what());
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& path) {
  if (!j.contains(key)) return fallback;
  return get<T>(j, key, path);
}

PortKind parse_kind(const std::string& s, const std::string& path) {
  if (s == "production") return PortKind::Production;
  if (s == "consumption") return PortKind::Consumption;
  throw InstanceParseError(path + ".kind: expected 'production' or 'consumption', got '" + s + "'");
}

LoadState parse_state(const std::string& s, const std::string& path) {
  if (s == "empty") return LoadState::Empty;
  if (s == "loaded") return LoadState::Loaded;
  throw InstanceParseError(path + ".initial_state: expected 'empty' or 'loaded', got '" + s + "'");
}

}  // namespace

void validate(const Instance& inst) {
  const int T = inst.horizon;
  require(T >= 1, "horizon", "must be at least 1");
  require(inst.op_duration >= 1, "op_duration", "must be at least 1");
  require(inst.early_finish_reward >= 0.0, "reward_early_finish", "must be nonnegative");

  const auto np = inst.ports.size();
  require(np >= 2, "ports", "need at least one production and one consumption port");
  bool has_prod = false, has_cons = false;
  for (std::size_t j = 0; j < np; ++j) {
    const auto& p = inst.ports[j];
    const auto path = idx("ports", j);
    require(p.id == static_cast<int>(j), path + ".id", "ids must equal list position");
    has_prod |= p.kind == PortKind::Production;
    has_cons |= p.kind == PortKind::Consumption;
    check_series(p.rate, T, path + ".rate", true);
    check_series(p.inv_min, T, path + ".inv_min", true);
    check_series(p.inv_max, T, path + ".inv_max", true);
    check_series(p.penalty, T, path + ".penalty", true);
    for (int t = 0; t < T; ++t)
      require(p.inv_min[t] <= p.inv_max[t], idx(path + ".inv_max", t), "below inv_min");
    require(std::isfinite(p.inv_init) && p.inv_init >= p.inv_min[0] && p.inv_init <= p.inv_max[0],
            path + ".inv_init", "must lie within [inv_min[0], inv_max[0]] of port " + std::to_string(j));
    require(p.berth_limit >= 1, path + ".berth_limit", "must be at least 1");
    require(std::isfinite(p.port_fee) && p.port_fee >= 0.0, path + ".port_fee", "must be nonnegative");
  }
  require(has_prod, "ports", "no production port");
  require(has_cons, "ports", "no consumption port");

  require(!inst.classes.empty(), "vessel_classes", "at least one class required");
  for (std::size_t c = 0; c < inst.classes.size(); ++c) {
    const auto& vc = inst.classes[c];
    const auto path = idx("vessel_classes", c);
    require(vc.id == static_cast<int>(c), path + ".id", "ids must equal list position");
    require(vc.capacity > 0.0, path + ".capacity", "must be positive");
    require(vc.cost_per_km >= 0.0, path + ".cost_per_km", "must be nonnegative");
    require(vc.ballast_discount >= 0.0 && vc.ballast_discount <= 1.0, path + ".ballast_discount",
            "must lie in [0,1]");
  }

  for (std::size_t v = 0; v < inst.vessels.size(); ++v) {
    const auto& vs = inst.vessels[v];
    const auto path = idx("vessels", v);
    require(vs.id == static_cast<int>(v), path + ".id", "ids must equal list position");
    require(vs.class_id >= 0 && vs.class_id < static_cast<int>(inst.classes.size()), path + ".class",
            "unknown vessel class");
    require(vs.start_port >= 0 && vs.start_port < static_cast<int>(np), path + ".start_port",
            "unknown port");
    require(vs.ready_time >= 0 && vs.ready_time < T, path + ".ready_time", "must lie in [0, horizon)");
  }

  require(inst.distance_km.size() == np, "distance_km", "must be a ports x ports matrix");
  for (std::size_t a = 0; a < np; ++a) {
    require(inst.distance_km[a].size() == np, idx("distance_km", a), "row length must equal port count");
    for (std::size_t b = 0; b < np; ++b) {
      const auto path = idx(idx("distance_km", a), b);
      const double d = inst.distance_km[a][b];
      require(std::isfinite(d) && d >= 0.0, path, "must be nonnegative");
      if (a == b) require(d == 0.0, path, "diagonal must be zero");
      require(d == inst.distance_km[b][a], path, "matrix must be symmetric");
    }
  }

  require(inst.travel_time.size() == inst.classes.size(), "travel_time", "one matrix per vessel class");
  for (std::size_t c = 0; c < inst.travel_time.size(); ++c) {
    const auto& m = inst.travel_time[c];
    require(m.size() == np, idx("travel_time", c), "must be a ports x ports matrix");
    for (std::size_t a = 0; a < np; ++a) {
      require(m[a].size() == np, idx(idx("travel_time", c), a), "row length must equal port count");
      for (std::size_t b = 0; b < np; ++b) {
        const auto path = idx(idx(idx("travel_time", c), a), b);
        if (a == b)
          require(m[a][b] == 0, path, "diagonal must be zero");
        else
          require(m[a][b] >= 1, path, "travel between distinct ports takes at least one period");
      }
    }
  }
}

Instance Instance::with_horizon(int periods) const {
  if (periods < 1 || periods > horizon)
    throw InstanceValidationError("horizon", "override must lie in [1, " + std::to_string(horizon) + "]");
  Instance out = *this;
  out.horizon = periods;
  for (auto& p : out.ports) {
    p.rate.resize(periods);
    p.inv_min.resize(periods);
    p.inv_max.resize(periods);
    p.penalty.resize(periods);
  }
  for (auto& v : out.vessels) v.ready_time = std::min(v.ready_time, periods - 1);
  return out;
}

Instance parse_instance(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw InstanceParseError(std::string("instance: ") + e.what());
  }
  if (!doc.is_object()) throw InstanceParseError("instance: top level must be an object");

  const int version = get<int>(doc, "format_version", "instance");
  if (version != kFormatVersion)
    throw InstanceParseError("format_version: unsupported version " + std::to_string(version));

  Instance inst;
  inst.horizon = get<int>(doc, "horizon", "instance");
  inst.early_finish_reward = get_or<double>(doc, "reward_early_finish", 0.0, "instance");
  inst.op_duration = get_or<int>(doc, "op_duration", 1, "instance");
  if (doc.contains("meta")) {
    const auto& meta = doc["meta"];
    inst.name = get_or<std::string>(meta, "name", "", "meta");
    inst.difficulty_class = get_or<std::string>(meta, "class", "", "meta");
  }

  const auto& ports = at(doc, "ports", "instance");
  if (!ports.is_array()) throw InstanceParseError("ports: expected an array");
  for (std::size_t j = 0; j < ports.size(); ++j) {
    const auto path = idx("ports", j);
    const auto& pj = ports[j];
    Port p;
    p.id = get<int>(pj, "id", path);
    p.name = get_or<std::string>(pj, "name", "P" + std::to_string(p.id), path);
    p.kind = parse_kind(get<std::string>(pj, "kind", path), path);
    p.rate = get<std::vector<double>>(pj, "rate", path);
    p.inv_min = get<std::vector<double>>(pj, "inv_min", path);
    p.inv_max = get<std::vector<double>>(pj, "inv_max", path);
    p.inv_init = get<double>(pj, "inv_init", path);
    p.berth_limit = get<int>(pj, "berth_limit", path);
    p.port_fee = get<double>(pj, "port_fee", path);
    p.penalty = get<std::vector<double>>(pj, "penalty", path);
    inst.ports.push_back(std::move(p));
  }

  const auto& classes = at(doc, "vessel_classes", "instance");
  if (!classes.is_array()) throw InstanceParseError("vessel_classes: expected an array");
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto path = idx("vessel_classes", c);
    VesselClass vc;
    vc.id = get<int>(classes[c], "id", path);
    vc.capacity = get<double>(classes[c], "capacity", path);
    vc.cost_per_km = get<double>(classes[c], "cost_per_km", path);
    vc.ballast_discount = get<double>(classes[c], "ballast_discount", path);
    inst.classes.push_back(vc);
  }

  const auto& vessels = at(doc, "vessels", "instance");
  if (!vessels.is_array()) throw InstanceParseError("vessels: expected an array");
  for (std::size_t v = 0; v < vessels.size(); ++v) {
    const auto path = idx("vessels", v);
    Vessel vs;
    vs.id = get<int>(vessels[v], "id", path);
    vs.class_id = get<int>(vessels[v], "class", path);
    vs.start_port = get<int>(vessels[v], "start_port", path);
    vs.ready_time = get<int>(vessels[v], "ready_time", path);
    vs.initial_state = parse_state(get<std::string>(vessels[v], "initial_state", path), path);
    inst.vessels.push_back(vs);
  }

  inst.distance_km = get<std::vector<std::vector<double>>>(doc, "distance_km", "instance");
  inst.travel_time = get<std::vector<std::vector<std::vector<int>>>>(doc, "travel_time", "instance");

  validate(inst);
  return inst;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InstanceParseError(path.string() + ": cannot open");
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["meta"] = {{"name", inst.name}, {"class", inst.difficulty_class}};
  doc["horizon"] = inst.horizon;
  doc["op_duration"] = inst.op_duration;
  doc["reward_early_finish"] = inst.early_finish_reward;
  doc["ports"] = json::array();
  for (const auto& p : inst.ports) {
    doc["ports"].push_back({{"id", p.id},
                            {"name", p.name},
                            {"kind", p.kind == PortKind::Production ? "production" : "consumption"},
                            {"rate", p.rate},
                            {"inv_min", p.inv_min},
                            {"inv_max", p.inv_max},
                            {"inv_init", p.inv_init},
                            {"berth_limit", p.berth_limit},
                            {"port_fee", p.port_fee},
                            {"penalty", p.penalty}});
  }
  doc["vessel_classes"] = json::array();
  for (const auto& c : inst.classes) {
    doc["vessel_classes"].push_back({{"id", c.id},
                                     {"capacity", c.capacity},
                                     {"cost_per_km", c.cost_per_km},
                                     {"ballast_discount", c.ballast_discount}});
  }
  doc["vessels"] = json::array();
  for (const auto& v : inst.vessels) {
    doc["vessels"].push_back({{"id", v.id},
                              {"class", v.class_id},
                              {"start_port", v.start_port},
                              {"ready_time", v.ready_time},
                              {"initial_state", v.initial_state == LoadState::Empty ? "empty" : "loaded"}});
  }
  doc["distance_km"] = inst.distance_km;
  doc["travel_time"] = inst.travel_time;
  out << doc.dump(2) << '\n';
}

void save_instance(const std::filesystem::path& path, const Instance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  write_instance(out, inst);
}

Instance generate_toy(std::uint64_t seed, int n_consumers, int horizon) {
  if (n_consumers < 1) throw std::invalid_argument("generate_toy: n_consumers must be >= 1");
  if (horizon < 4) throw std::invalid_argument("generate_toy: horizon must be >= 4");

  // Seed 1 is the unperturbed reference; every other seed draws variations.
  const bool reference = seed == 1;
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(n_consumers), static_cast<std::uint64_t>(horizon)}));
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };

  const int n_ports = n_consumers + 1;
  const int n_vessels = n_consumers == 1 ? 1 : 2;
  const int n_classes = n_vessels;

  Instance inst;
  inst.horizon = horizon;
  inst.op_duration = 1;
  inst.early_finish_reward = 0.0;
  inst.name = "TOY_s" + std::to_string(seed) + "_c" + std::to_string(n_consumers) + "_T" +
              std::to_string(horizon);
  inst.difficulty_class = "E";

  for (int c = 0; c < n_classes; ++c) {
    VesselClass vc;
    vc.id = c;
    vc.capacity = reference ? 4.0 : static_cast<double>(pick(4, 6));
    vc.cost_per_km = 1.0;
    vc.ballast_discount = 0.05;
    inst.classes.push_back(vc);
  }

  std::vector<double> cons_rate(n_consumers);
  for (int i = 0; i < n_consumers; ++i) cons_rate[i] = reference ? 2.0 : static_cast<double>(pick(1, 2));
  const double prod_rate = std::accumulate(cons_rate.begin(), cons_rate.end(), 0.0);

  auto make_port = [&](int id, PortKind kind, double rate, double cap, double init, double penalty) {
    Port p;
    p.id = id;
    p.name = "P" + std::to_string(id);
    p.kind = kind;
    p.rate.assign(horizon, rate);
    p.inv_min.assign(horizon, 0.0);
    p.inv_max.assign(horizon, cap);
    p.inv_init = init;
    p.berth_limit = 1;
    p.port_fee = reference ? 0.0 : static_cast<double>(pick(0, 3));
    p.penalty.assign(horizon, penalty);
    return p;
  };

  {
    const double cap = reference ? 10.0 : static_cast<double>(pick(10, 14) + 2 * (n_consumers - 1));
    const double init = reference ? 5.0 : static_cast<double>(pick(3, static_cast<int>(cap) - 3));
    const double pen = reference ? 100.0 : static_cast<double>(10 * pick(6, 15));
    inst.ports.push_back(make_port(0, PortKind::Production, prod_rate, cap, init, pen));
  }
  for (int i = 0; i < n_consumers; ++i) {
    const double cap = reference ? 10.0 : static_cast<double>(pick(8, 12));
    const double init = reference ? 5.0 : static_cast<double>(pick(3, static_cast<int>(cap) - 2));
    const double pen = reference ? 100.0 : static_cast<double>(10 * pick(6, 15));
    inst.ports.push_back(make_port(i + 1, PortKind::Consumption, cons_rate[i], cap, init, pen));
  }

  inst.distance_km.assign(n_ports, std::vector<double>(n_ports, 0.0));
  std::vector<std::vector<int>> base_tt(n_ports, std::vector<int>(n_ports, 0));
  for (int a = 0; a < n_ports; ++a) {
    for (int b = a + 1; b < n_ports; ++b) {
      const double d = reference ? 10.0 : static_cast<double>(5 * pick(1, 4));
      inst.distance_km[a][b] = inst.distance_km[b][a] = d;
      const int tt = reference ? 2 : pick(2, 3);
      base_tt[a][b] = base_tt[b][a] = tt;
    }
  }
  inst.travel_time.assign(n_classes, base_tt);
  // The second class is a slower ship on the longer legs.
  if (n_classes > 1) {
    for (int a = 0; a < n_ports; ++a)
      for (int b = 0; b < n_ports; ++b)
        if (a != b && inst.distance_km[a][b] >= 15.0) inst.travel_time[1][a][b] += 1;
  }

  for (int v = 0; v < n_vessels; ++v) {
    Vessel vs;
    vs.id = v;
    vs.class_id = v % n_classes;
    if (v == 0) {
      vs.start_port = 0;
      vs.ready_time = 0;
      vs.initial_state = LoadState::Empty;
    } else {
      // Second vessel starts loaded at a consumer.
      vs.start_port = 1 + pick(0, n_consumers - 1);
      vs.ready_time = pick(0, 2);
      vs.initial_state = LoadState::Loaded;
    }
    inst.vessels.push_back(vs);
  }

  validate(inst);
  return inst;
}

}  // namespace mirp
