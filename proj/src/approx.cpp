#include "mpmo/shortestpath/approx.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mpmo::sp {

Objective floor_log(Objective f, double r) {
  if (f < 1) throw DomainError(fmt::format("box index needs f >= 1, got {}", f));
  if (!(r > 1.0)) throw ParameterError(fmt::format("box base must exceed 1, got {}", r));
  const auto fd = static_cast<double>(f);
  auto k = static_cast<Objective>(std::floor(std::log(fd) / std::log(r)));
  // The quotient of logs can land a hair off an integer; settle with pow.
  while (std::pow(r, static_cast<double>(k + 1)) <= fd) ++k;
  while (k > 0 && std::pow(r, static_cast<double>(k)) > fd) --k;
  return k;
}

ObjectiveVector box_index(const ObjectiveVector& f, double r) {
  std::vector<Objective> box;
  box.reserve(f.size());
  for (auto v : f.values()) box.push_back(floor_log(v, r));
  return ObjectiveVector(std::move(box));
}

MultiPartyObjectives box_index(const MultiPartyObjectives& f, double r) {
  std::vector<ObjectiveVector> boxes;
  boxes.reserve(f.party_count());
  for (const auto& p : f.parties()) boxes.push_back(box_index(p, r));
  return MultiPartyObjectives(std::move(boxes));
}

bool epsilon_dominates(Vertex endpoint_a, const MultiPartyObjectives& fa, Vertex endpoint_b,
                       const MultiPartyObjectives& fb, double eps, std::size_t party) {
  if (endpoint_a != endpoint_b) return false;
  const auto& a = fa.party(party);
  const auto& b = fb.party(party);
  if (a.size() != b.size()) throw StructuralError("objective vectors differ in length");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (static_cast<double>(a[k]) > (1.0 + eps) * static_cast<double>(b[k])) return false;
  }
  return true;
}

bool strictly_epsilon_dominates(Vertex endpoint_a, const MultiPartyObjectives& fa,
                                Vertex endpoint_b, const MultiPartyObjectives& fb, double eps,
                                std::size_t party) {
  return epsilon_dominates(endpoint_a, fa, endpoint_b, fb, eps, party) &&
         fa.party(party) != fb.party(party);
}

void ApproxParams::validate() const {
  if (!(eps1 > 0.0) || !(eps2 > 0.0)) {
    throw ParameterError(fmt::format("eps1 and eps2 must be positive, got {} and {}", eps1, eps2));
  }
  if (eps2_max < eps2) {
    throw ParameterError(fmt::format("eps2max {} is below eps2 {}", eps2_max, eps2));
  }
  if (r != 0.0 && !(r > 1.0)) throw ParameterError(fmt::format("box base must exceed 1, got {}", r));
  if (relax_step < 0.0) throw ParameterError("relaxation step must be non-negative");
}

double path_box_base(std::size_t n, double eps) {
  if (!(eps > 0.0)) throw ParameterError(fmt::format("eps must be positive, got {}", eps));
  if (n <= 1) return 1.0 + eps;
  return std::pow(1.0 + eps, 1.0 / static_cast<double>(n - 1));
}

double approximation_degree(const MultiPartyObjectives& f,
                            const std::vector<MultiPartyObjectives>& front) {
  if (front.empty()) throw DomainError("approximation degree against an empty front");
  double worst = 1.0;
  for (const auto& z : front) {
    for (std::size_t m = 0; m < f.party_count(); ++m) {
      const auto& a = f.party(m);
      const auto& b = z.party(m);
      for (std::size_t k = 0; k < a.size(); ++k) {
        if (b[k] < 1) throw DomainError("reference objectives must be >= 1");
        worst = std::max(worst, static_cast<double>(a[k]) / static_cast<double>(b[k]));
      }
    }
  }
  return worst - 1.0;
}

}  // namespace mpmo::sp
