#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mirp {

enum class PortKind { Production, Consumption };
enum class LoadState { Empty, Loaded };

/// A loading or discharging port. Per-period arrays have one entry per
/// period; entry t-1 belongs to period t (periods run 1..T, inventory index 0
/// is the initial stock).
struct Port {
  int id = 0;
  std::string name;
  PortKind kind = PortKind::Production;
  std::vector<double> rate;
  std::vector<double> inv_min;
  std::vector<double> inv_max;
  double inv_init = 0.0;
  int berth_limit = 1;
  double port_fee = 0.0;
  std::vector<double> penalty;

  /// +1 for production, -1 for consumption.
  int sign() const { return kind == PortKind::Production ? 1 : -1; }

  bool operator==(const Port&) const = default;
};

struct VesselClass {
  int id = 0;
  double capacity = 0.0;
  double cost_per_km = 0.0;
  double ballast_discount = 0.0;

  bool operator==(const VesselClass&) const = default;
};

/// A vessel becomes available at `start_port` in period `ready_time`. A
/// vessel that is still at sea heading for port p is encoded as
/// start_port = p with ready_time set to its arrival.
struct Vessel {
  int id = 0;
  int class_id = 0;
  int start_port = 0;
  int ready_time = 0;
  LoadState initial_state = LoadState::Empty;

  bool operator==(const Vessel&) const = default;
};

struct Instance {
  int horizon = 0;
  std::vector<Port> ports;
  std::vector<VesselClass> classes;
  std::vector<Vessel> vessels;
  std::vector<std::vector<double>> distance_km;
  /// travel_time[class][from][to], whole periods.
  std::vector<std::vector<std::vector<int>>> travel_time;
  int op_duration = 1;
  double early_finish_reward = 0.0;
  std::string name;
  std::string difficulty_class;

  bool operator==(const Instance&) const = default;

  int num_ports() const { return static_cast<int>(ports.size()); }
  int num_vessels() const { return static_cast<int>(vessels.size()); }

  const VesselClass& vessel_class(int vessel) const { return classes[vessels[vessel].class_id]; }
  double capacity(int vessel) const { return vessel_class(vessel).capacity; }
  int travel(int vessel, int from, int to) const {
    return travel_time[vessels[vessel].class_id][from][to];
  }
  PortKind kind(int port) const { return ports[port].kind; }

  /// Copy restricted to the first `periods` periods.
  Instance with_horizon(int periods) const;
};

inline constexpr int kFormatVersion = 1;

/// Malformed file: not parseable, missing keys, wrong JSON types.
class InstanceParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed file that breaks a model invariant. `path()` names the field,
/// e.g. "ports[1].inv_init".
class InstanceValidationError : public std::runtime_error {
 public:
  InstanceValidationError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Throws InstanceValidationError on the first violated invariant.
void validate(const Instance& inst);

Instance load_instance(const std::filesystem::path& path);
Instance parse_instance(std::istream& in);
void write_instance(std::ostream& out, const Instance& inst);
void save_instance(const std::filesystem::path& path, const Instance& inst);

/// Balanced single-producer fixture. Seed 1 yields the reference fixture
/// (all rates 2, bounds [0,10], capacity 4, 10 km legs of 2 periods); other
/// seeds draw small variations. One vessel per instance with a single
/// consumer, two otherwise.
Instance generate_toy(std::uint64_t seed, int n_consumers, int horizon);

}  // namespace mirp
