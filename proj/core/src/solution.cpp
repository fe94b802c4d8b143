#include "mirp/solution.hpp"

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace mirp {

namespace {

PortKind opposite(PortKind k) {
  return k == PortKind::Production ? PortKind::Consumption : PortKind::Production;
}

PortKind first_kind(const Instance& inst, int vessel) {
  return inst.vessels[vessel].initial_state == LoadState::Empty ? PortKind::Production
                                                                : PortKind::Consumption;
}

bool in_range(const Call& c, const Instance& inst) {
  return c.port >= 0 && c.port < inst.num_ports() && c.vessel >= 0 && c.vessel < inst.num_vessels();
}

}  // namespace

bool parity_valid(std::span<const Call> calls, const Instance& inst) {
  std::vector<signed char> expect(inst.num_vessels(), -1);
  for (const auto& c : calls) {
    if (!in_range(c, inst)) return false;
    auto& e = expect[c.vessel];
    const PortKind want = e < 0 ? first_kind(inst, c.vessel) : static_cast<PortKind>(e);
    if (inst.kind(c.port) != want) return false;
    e = static_cast<signed char>(opposite(want));
  }
  return true;
}

PortKind next_kind_after(std::span<const Call> calls, int vessel, const Instance& inst) {
  for (auto it = calls.rbegin(); it != calls.rend(); ++it)
    if (it->vessel == vessel) return opposite(inst.kind(it->port));
  return first_kind(inst, vessel);
}

int Solution::last_of_vessel(int vessel) const {
  if (vessel < 0 || vessel >= static_cast<int>(last_vessel_pos_.size())) return kNone;
  return last_vessel_pos_[vessel];
}

void Solution::append(Call c, const Instance& inst) {
  if (!in_range(c, inst))
    throw ParityError("call (" + std::to_string(c.port) + "," + std::to_string(c.vessel) +
                      ") references an unknown port or vessel");
  if (last_vessel_pos_.size() < inst.vessels.size()) last_vessel_pos_.resize(inst.vessels.size(), kNone);
  if (last_port_pos_.size() < inst.ports.size()) last_port_pos_.resize(inst.ports.size(), kNone);

  const int pv = last_vessel_pos_[c.vessel];
  const PortKind want = pv == kNone ? first_kind(inst, c.vessel) : opposite(inst.kind(calls_[pv].port));
  if (inst.kind(c.port) != want)
    throw ParityError("position " + std::to_string(calls_.size()) + ": vessel " + std::to_string(c.vessel) +
                      " must visit a " + (want == PortKind::Production ? "production" : "consumption") +
                      " port next");

  const int pos = static_cast<int>(calls_.size());
  const int pp = last_port_pos_[c.port];
  calls_.push_back(c);
  prev_vessel_.push_back(pv);
  prev_port_.push_back(pp);
  next_vessel_.push_back(kNone);
  next_port_.push_back(kNone);
  if (pv != kNone) next_vessel_[pv] = pos;
  if (pp != kNone) next_port_[pp] = pos;
  last_vessel_pos_[c.vessel] = pos;
  last_port_pos_[c.port] = pos;
}

Solution Solution::from_calls(std::vector<Call> calls, const Instance& inst) {
  Solution s;
  s.calls_.reserve(calls.size());
  for (const auto& c : calls) s.append(c, inst);
  return s;
}

void Solution::rebuild_pointers(const Instance& inst) {
  *this = mirp::rebuild_pointers(std::move(*this), inst);
}

Solution rebuild_pointers(Solution s, const Instance& inst) {
  if (!parity_valid(s.calls_, inst)) {
    // Re-run append on a scratch copy to obtain the positional message.
    Solution probe;
    for (const auto& c : s.calls_) probe.append(c, inst);
  }
  const auto n = s.calls_.size();
  s.prev_vessel_.assign(n, kNone);
  s.next_vessel_.assign(n, kNone);
  s.prev_port_.assign(n, kNone);
  s.next_port_.assign(n, kNone);
  s.last_vessel_pos_.assign(inst.vessels.size(), kNone);
  s.last_port_pos_.assign(inst.ports.size(), kNone);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = s.calls_[i];
    const int pos = static_cast<int>(i);
    if (int pv = s.last_vessel_pos_[c.vessel]; pv != kNone) {
      s.prev_vessel_[i] = pv;
      s.next_vessel_[pv] = pos;
    }
    if (int pp = s.last_port_pos_[c.port]; pp != kNone) {
      s.prev_port_[i] = pp;
      s.next_port_[pp] = pos;
    }
    s.last_vessel_pos_[c.vessel] = pos;
    s.last_port_pos_[c.port] = pos;
  }
  return s;
}

// Projection lemma for partially commutative sequences: two sequences are
// equivalent iff, for every resource, the subsequences of calls touching it
// coincide. Here resources are ports and vessels.
bool equivalent_under_commutation(const Solution& a, const Solution& b) {
  if (a.size() != b.size()) return false;
  auto project = [](const Solution& s) {
    std::map<std::pair<int, int>, std::vector<Call>> out;  // (0,port) or (1,vessel)
    for (const auto& c : s.calls()) {
      out[{0, c.port}].push_back(c);
      out[{1, c.vessel}].push_back(c);
    }
    return out;
  };
  return project(a) == project(b);
}

void write_solution(std::ostream& out, const Solution& s, const std::vector<bool>& mask) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s[i].port << ',' << s[i].vessel;
    if (i < mask.size() && mask[i]) out << " #truncated";
    out << '\n';
  }
}

Solution read_solution(std::istream& in, const Instance& inst) {
  std::vector<Call> calls;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::istringstream ls(line);
    Call c;
    char comma = 0;
    if (!(ls >> c.port >> comma >> c.vessel) || comma != ',')
      throw std::runtime_error("solution line " + std::to_string(lineno) + ": expected 'port,vessel'");
    std::string rest;
    if (ls >> rest)
      throw std::runtime_error("solution line " + std::to_string(lineno) + ": trailing text '" + rest + "'");
    calls.push_back(c);
  }
  return Solution::from_calls(std::move(calls), inst);
}

}  // namespace mirp
