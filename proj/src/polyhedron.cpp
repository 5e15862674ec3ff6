#include "reluregions/polyhedron.hpp"

#include <map>
#include <utility>

#include "reluregions/errors.hpp"

namespace reluregions {

RegionSystem region_system(const Network& net, const Pattern& a) {
  net.validate();
  const auto pre = masked_preactivations(net, a);
  RegionSystem rs;
  rs.closure.dim = net.input_dim;
  int bit = 0;
  for (int l = 0; l < net.depth(); ++l) {
    for (int j = 0; j < net.width(l); ++j, ++bit) {
      const AffineFunction& f = pre[l][j];
      const bool active = a[bit] != 0;
      if (f.is_constant()) {
        if (active) {
          // S_a needs f > 0, P_a needs f >= 0.
          if (f.b <= 0) rs.region_empty = true;
          if (f.b < 0) rs.closure_empty = true;
        } else {
          if (f.b > 0) rs.region_empty = rs.closure_empty = true;
        }
        continue;
      }
      const int row = static_cast<int>(rs.closure.rows.size());
      if (active) {
        rs.closure.rows.push_back(ge_zero(f));
        rs.active_rows.push_back(row);
        rs.proper_rows.push_back(row);
      } else {
        rs.closure.rows.push_back(le_zero(f));
        rs.proper_rows.push_back(row);  // non-constant, hence not identically zero
      }
    }
  }
  return rs;
}

int region_status(const Network& net, const Pattern& a, LpContext* ctx) {
  RegionSystem rs = region_system(net, a);
  if (rs.region_empty) return -1;
  auto witness = strict_point(rs.closure, rs.active_rows, ctx);
  if (!witness) return -1;
  // S_a is nonempty, so dim S_a = dim P_a.
  return polyhedron_dim(rs.closure, ctx);
}

int closure_intersection_dim(const Network& net, const Pattern& a, const Pattern& b,
                             LpContext* ctx) {
  RegionSystem ra = region_system(net, a);
  RegionSystem rb = region_system(net, b);
  if (ra.region_empty || rb.region_empty) return -1;
  if (!strict_point(ra.closure, ra.active_rows, ctx)) return -1;
  if (!strict_point(rb.closure, rb.active_rows, ctx)) return -1;
  // Both regions are nonempty, so each closure equals its weak relaxation
  // and the intersection is one polyhedron.  Deduplicate rows shared by the
  // two systems (common activation prefixes produce identical constraints).
  ConstraintSystem combined;
  combined.dim = net.input_dim;
  std::map<std::pair<int, std::pair<std::vector<Rational>, Rational>>, bool> seen;
  auto add_rows = [&](const ConstraintSystem& sys) {
    for (const auto& row : sys.rows) {
      auto key = std::make_pair(static_cast<int>(row.rel), std::make_pair(row.a, row.b));
      if (seen.emplace(std::move(key), true).second) combined.rows.push_back(row);
    }
  };
  add_rows(ra.closure);
  add_rows(rb.closure);
  return polyhedron_dim(combined, ctx);
}

}  // namespace reluregions
