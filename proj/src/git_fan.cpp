#include "coxmin/git_fan.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "coxmin/common.hpp"

namespace coxmin {

namespace {

// Exact Gaussian elimination; returns the rank of the row-major matrix.
unsigned rationalRank(std::vector<std::vector<Rational>> m) {
  unsigned rank = 0;
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c].isZero()) ++p;
    if (p == rows) continue;
    std::swap(m[rank], m[p]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].isZero()) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] = m[r][k] - f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

// Unique solution of (columns) * lambda = point when the columns are
// linearly independent and the system is consistent; nullopt otherwise.
std::optional<std::vector<Rational>> solveUnique(const std::vector<const LatticeVec*>& cols,
                                                 const std::vector<Rational>& point) {
  const std::size_t m = point.size();
  const std::size_t k = cols.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(k + 1));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < k; ++c) a[r][c] = Rational((*cols[c])[r]);
    a[r][k] = point[r];
  }
  std::vector<std::size_t> pivotCol;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k && rank < m; ++c) {
    std::size_t p = rank;
    while (p < m && a[p][c].isZero()) ++p;
    if (p == m) return std::nullopt;  // dependent columns: not the unique-solve case
    std::swap(a[rank], a[p]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == rank || a[r][c].isZero()) continue;
      Rational f = a[r][c] / a[rank][c];
      for (std::size_t t = c; t <= k; ++t) a[r][t] = a[r][t] - f * a[rank][t];
    }
    pivotCol.push_back(c);
    ++rank;
  }
  if (rank < k) return std::nullopt;
  for (std::size_t r = rank; r < m; ++r)
    if (!a[r][k].isZero()) return std::nullopt;  // inconsistent
  std::vector<Rational> lambda(k);
  for (std::size_t i = 0; i < rank; ++i) lambda[pivotCol[i]] = a[i][k] / a[i][pivotCol[i]];
  return lambda;
}

bool allZero(const std::vector<Rational>& v) {
  for (const Rational& x : v)
    if (!x.isZero()) return false;
  return true;
}

// Upper half-plane (incl. the positive x-axis) first, then angular order.
int halfClass(const LatticeVec& v) { return (v[1] > 0 || (v[1] == 0 && v[0] > 0)) ? 0 : 1; }

long cross2(const LatticeVec& a, const LatticeVec& b) { return a[0] * b[1] - a[1] * b[0]; }

bool angularLess(const LatticeVec& a, const LatticeVec& b) {
  int ha = halfClass(a), hb = halfClass(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b) > 0;
}

Rational crossPoint(const LatticeVec& a, const std::vector<Rational>& p) {
  return Rational(a[0]) * p[1] - Rational(a[1]) * p[0];
}

std::vector<Rational> toRational(const LatticeVec& v) {
  std::vector<Rational> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

}  // namespace

LatticeVec primitiveVec(LatticeVec v) {
  long g = 0;
  for (long x : v) g = std::gcd(g, std::abs(x));
  if (g > 1)
    for (long& x : v) x /= g;
  return v;
}

bool coneContains(const std::vector<LatticeVec>& rays, const std::vector<Rational>& point) {
  if (allZero(point)) return true;
  const std::size_t n = rays.size();
  const std::size_t m = point.size();
  const std::size_t cap = std::min(n, m);
  // Caratheodory: membership is witnessed on a linearly independent subset.
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t)> search = [&](std::size_t from) -> bool {
    if (!idx.empty()) {
      std::vector<const LatticeVec*> cols;
      cols.reserve(idx.size());
      for (std::size_t i : idx) cols.push_back(&rays[i]);
      if (auto lambda = solveUnique(cols, point)) {
        bool nonneg = true;
        for (const Rational& l : *lambda)
          if (l.sign() < 0) {
            nonneg = false;
            break;
          }
        if (nonneg) return true;
      }
    }
    if (idx.size() == cap) return false;
    for (std::size_t i = from; i < n; ++i) {
      idx.push_back(i);
      if (search(i + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  return search(0);
}

RefinementFan refinementFan(const std::vector<LatticeVec>& degrees, std::vector<long> orders) {
  RefinementFan fan;
  fan.degrees = degrees;
  fan.orders = std::move(orders);
  fan.rank = degrees.empty() ? static_cast<unsigned>(fan.orders.size())
                             : static_cast<unsigned>(degrees.front().size());
  const unsigned m = fan.rank;
  if (m == 0) {
    fan.fullSupport = true;
    fan.chambersExact = true;
    return fan;
  }

  std::vector<LatticeVec> prim;
  for (const LatticeVec& d : degrees) {
    COXMIN_CHECK(d.size() == m, "refinementFan: mixed degree lengths");
    LatticeVec p = primitiveVec(d);
    bool zero = std::all_of(p.begin(), p.end(), [](long x) { return x == 0; });
    if (!zero && std::find(prim.begin(), prim.end(), p) == prim.end()) prim.push_back(p);
  }

  {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(prim.size());
    for (const LatticeVec& r : prim) rows.push_back(toRational(r));
    if (rationalRank(std::move(rows)) < m)
      throw ValidationError("generator degrees do not span the class lattice");
  }

  if (m == 1) {
    bool pos = false, neg = false;
    for (const LatticeVec& r : prim) (r[0] > 0 ? pos : neg) = true;
    if (pos) fan.rays.push_back({1});
    if (neg) fan.rays.push_back({-1});
    for (const LatticeVec& r : fan.rays) fan.chambers.push_back(Cone{{r}});
    fan.fullSupport = pos && neg;
    fan.support.rays = fan.rays;
    fan.chambersExact = true;
    return fan;
  }

  if (m == 2) {
    std::sort(prim.begin(), prim.end(), angularLess);
    fan.rays = prim;
    fan.support.rays = prim;
    // A sector between cyclically adjacent rays is a chamber exactly when it
    // is strictly convex; wider sectors lie outside the support.
    bool full = true;
    for (std::size_t i = 0; i < prim.size(); ++i) {
      const LatticeVec& u = prim[i];
      const LatticeVec& v = prim[(i + 1) % prim.size()];
      if (prim.size() >= 2 && cross2(u, v) > 0)
        fan.chambers.push_back(Cone{{u, v}});
      else
        full = false;
    }
    fan.fullSupport = full && prim.size() >= 3;
    fan.chambersExact = true;
    return fan;
  }

  // Higher rank: rays and support only; chambers are not enumerated.
  std::sort(prim.begin(), prim.end());
  fan.rays = prim;
  fan.support.rays = prim;
  fan.fullSupport = [&] {
    for (unsigned i = 0; i < m; ++i) {
      std::vector<Rational> e(m);
      e[i] = Rational(1);
      if (!coneContains(prim, e)) return false;
      e[i] = Rational(-1);
      if (!coneContains(prim, e)) return false;
    }
    return true;
  }();
  fan.chambersExact = false;
  return fan;
}

RefinementFan refinementFan(const CoxPresentation& pres) {
  std::vector<LatticeVec> degrees;
  degrees.reserve(pres.generators.size());
  for (const auto& g : pres.generators) degrees.push_back(g.exponents);
  return refinementFan(degrees, pres.orders);
}

Cone movableCone(const CoxPresentation& pres) {
  std::vector<LatticeVec> rays;
  for (const auto& g : pres.generators) {
    if (g.boundary) continue;
    LatticeVec p = primitiveVec(g.exponents);
    bool zero = std::all_of(p.begin(), p.end(), [](long x) { return x == 0; });
    if (!zero && std::find(rays.begin(), rays.end(), p) == rays.end()) rays.push_back(p);
  }
  // Reduce to extreme rays: drop every ray inside the cone of the others.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::vector<LatticeVec> others;
      others.reserve(rays.size() - 1);
      for (std::size_t j = 0; j < rays.size(); ++j)
        if (j != i) others.push_back(rays[j]);
      if (!others.empty() && coneContains(others, toRational(rays[i]))) {
        rays.erase(rays.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  if (rays.size() == 2 && rays[0].size() == 2 && !angularLess(rays[0], rays[1]))
    std::swap(rays[0], rays[1]);
  return Cone{std::move(rays)};
}

FanLocation locateInFan(const RefinementFan& fan, const std::vector<Rational>& point) {
  COXMIN_CHECK(point.size() == fan.rank, "locateInFan: wrong point dimension");
  FanLocation loc;
  if (allZero(point)) {
    loc.kind = FanLocation::Kind::Origin;
    return loc;
  }

  if (fan.rank == 1) {
    const bool pos = point[0].sign() > 0;
    for (std::size_t i = 0; i < fan.rays.size(); ++i)
      if ((fan.rays[i][0] > 0) == pos) {
        loc.kind = FanLocation::Kind::OnRay;  // rank-1 chambers are their rays
        loc.ray = static_cast<int>(i);
        loc.chamber = static_cast<int>(i);
        return loc;
      }
    return loc;
  }

  if (fan.rank == 2) {
    for (std::size_t i = 0; i < fan.rays.size(); ++i) {
      const LatticeVec& r = fan.rays[i];
      if (crossPoint(r, point).isZero() &&
          (Rational(r[0]) * point[0] + Rational(r[1]) * point[1]).sign() > 0) {
        loc.kind = FanLocation::Kind::OnRay;
        loc.ray = static_cast<int>(i);
        return loc;
      }
    }
    for (std::size_t c = 0; c < fan.chambers.size(); ++c) {
      const LatticeVec& u = fan.chambers[c].rays[0];
      const LatticeVec& v = fan.chambers[c].rays[1];
      if (crossPoint(u, point).sign() > 0 && crossPoint(v, point).sign() < 0) {
        loc.kind = FanLocation::Kind::InChamber;
        loc.chamber = static_cast<int>(c);
        return loc;
      }
    }
    return loc;  // exterior
  }

  for (std::size_t i = 0; i < fan.rays.size(); ++i) {
    // Parallel to a ray: point = lambda * ray with lambda > 0.
    const LatticeVec& r = fan.rays[i];
    std::size_t k = 0;
    while (k < r.size() && r[k] == 0 && point[k].isZero()) ++k;
    if (k == r.size() || r[k] == 0 || point[k].isZero()) continue;
    Rational lambda = point[k] / Rational(r[k]);
    if (lambda.sign() <= 0) continue;
    bool match = true;
    for (std::size_t t = 0; t < r.size() && match; ++t)
      if (!(point[t] - lambda * Rational(r[t])).isZero()) match = false;
    if (match) {
      loc.kind = FanLocation::Kind::OnRay;
      loc.ray = static_cast<int>(i);
      return loc;
    }
  }
  if (coneContains(fan.rays, point)) loc.kind = FanLocation::Kind::InSupport;
  return loc;
}

std::vector<std::vector<std::size_t>> unstableLocusSubsets(const std::vector<LatticeVec>& degrees,
                                                           const RefinementFan& fan,
                                                           std::size_t chamber) {
  COXMIN_CHECK(chamber < fan.chambers.size(), "unstableLocusSubsets: no such chamber");
  const unsigned m = fan.rank;
  const Cone& ch = fan.chambers[chamber];
  // Sum of the bounding rays is an exact interior point of a strictly convex
  // sector; for a single-ray chamber (rank 1) it is the ray itself.
  std::vector<Rational> inside(m, Rational(0));
  for (const LatticeVec& r : ch.rays)
    for (unsigned i = 0; i < m; ++i) inside[i] = inside[i] + Rational(r[i]);

  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t)> search = [&](std::size_t from) {
    if (idx.size() == m) {
      std::vector<LatticeVec> sub;
      sub.reserve(m);
      for (std::size_t i : idx) sub.push_back(degrees[i]);
      if (coneContains(sub, inside)) out.push_back(idx);
      return;
    }
    for (std::size_t i = from; i < degrees.size(); ++i) {
      idx.push_back(i);
      search(i + 1);
      idx.pop_back();
    }
  };
  search(0);
  return out;
}

std::string fanSvg(const RefinementFan& fan, const Cone& movable) {
  COXMIN_CHECK(fan.rank == 2, "fanSvg: only rank-2 fans are drawn");
  const double W = 480, H = 480, cx = W / 2, cy = H / 2, R = 190;
  long maxAbs = 1;
  for (const LatticeVec& d : fan.degrees)
    for (long x : d) maxAbs = std::max(maxAbs, std::abs(x));
  const double unit = R / static_cast<double>(maxAbs);

  auto px = [&](double x) { return cx + x; };
  auto py = [&](double y) { return cy - y; };
  auto dir = [&](const LatticeVec& v, double len, double& x, double& y) {
    double nx = static_cast<double>(v[0]), ny = static_cast<double>(v[1]);
    double n = std::sqrt(nx * nx + ny * ny);
    x = nx / n * len;
    y = ny / n * len;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << " " << H
      << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
  svg << "  <rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

  if (movable.rays.size() == 2) {
    double x1, y1, x2, y2;
    dir(movable.rays[0], R, x1, y1);
    dir(movable.rays[1], R, x2, y2);
    double xm, ym;
    LatticeVec mid{movable.rays[0][0] + movable.rays[1][0],
                   movable.rays[0][1] + movable.rays[1][1]};
    dir(mid, R, xm, ym);
    svg << "  <path d=\"M " << px(0) << " " << py(0) << " L " << px(x1) << " " << py(y1) << " L "
        << px(xm) << " " << py(ym) << " L " << px(x2) << " " << py(y2)
        << " Z\" fill=\"#cfe8cf\" stroke=\"none\"/>\n";
  }

  svg << "  <line x1=\"" << px(-R - 20) << "\" y1=\"" << py(0) << "\" x2=\"" << px(R + 20)
      << "\" y2=\"" << py(0) << "\" stroke=\"#ddd\"/>\n";
  svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(-R - 20) << "\" x2=\"" << px(0)
      << "\" y2=\"" << py(R + 20) << "\" stroke=\"#ddd\"/>\n";

  for (const LatticeVec& r : fan.rays) {
    double x, y;
    dir(r, R, x, y);
    svg << "  <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(x) << "\" y2=\""
        << py(y) << "\" stroke=\"#333\" stroke-width=\"1.5\"/>\n";
    double lx, ly;
    dir(r, R + 16, lx, ly);
    svg << "  <text x=\"" << px(lx) << "\" y=\"" << py(ly)
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">(" << r[0] << "," << r[1]
        << ")</text>\n";
  }

  std::map<LatticeVec, int> mult;
  for (const LatticeVec& d : fan.degrees) ++mult[d];
  for (const auto& [d, n] : mult) {
    if (d[0] == 0 && d[1] == 0) continue;
    double x = d[0] * unit, y = d[1] * unit;
    svg << "  <circle cx=\"" << px(x) << "\" cy=\"" << py(y)
        << "\" r=\"4\" fill=\"#b03030\"/>\n";
    if (n > 1)
      svg << "  <text x=\"" << px(x) + 8 << "\" y=\"" << py(y) - 6
          << "\" fill=\"#b03030\">x" << n << "</text>\n";
  }
  if (mult.count(LatticeVec{0, 0}))
    svg << "  <text x=\"" << px(6) << "\" y=\"" << py(-6) << "\" fill=\"#b03030\">x"
        << mult[LatticeVec{0, 0}] << " at 0</text>\n";

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace coxmin
