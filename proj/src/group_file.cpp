#include "coxmin/group_file.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "coxmin/common.hpp"
#include "coxmin/expr.hpp"

namespace coxmin {

namespace {

CycNum z(unsigned n, long k) { return CycNum::zeta(n, k); }

// sqrt(-1) in Q(zeta_n), n divisible by 4.
CycNum iOf(unsigned n) { return z(n, n / 4); }

// 1/sqrt(2) = (zeta_8 - zeta_8^3)/2 in Q(zeta_n), n divisible by 8.
CycNum invSqrt2(unsigned n) {
  return Rational(1, 2) * (z(n, n / 8) - z(n, 3 * (n / 8)));
}

// sqrt(5) as the quadratic Gauss sum in Q(zeta_n), n divisible by 5.
CycNum sqrt5(unsigned n) {
  unsigned f = n / 5;
  return z(n, f) - z(n, 2 * f) - z(n, 3 * f) + z(n, 4 * f);
}

CMat m2(const CycNum& a, const CycNum& b, const CycNum& c, const CycNum& d) {
  CMat m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

CMat blockDiag(const CMat& a, const CMat& b) {
  CMat out(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      out(r, c) = a(r, c);
      out(r, c + 2) = CycNum(0);
      out(r + 2, c) = CycNum(0);
      out(r + 2, c + 2) = b(r, c);
    }
  return out;
}

// The swap of the two symplectic planes: (x, y, z, w) -> (z, w, x, y).
CMat blockSwap() {
  CMat out(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = CycNum((r + 2) % 4 == c ? 1 : 0);
  return out;
}

// Gram matrix of dx^dy + dz^dw.
CMat symplecticGram() {
  CMat out(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = CycNum(0);
  out(0, 1) = CycNum(1);
  out(1, 0) = CycNum(-1);
  out(2, 3) = CycNum(1);
  out(3, 2) = CycNum(-1);
  return out;
}

// G(K, alpha): block-diagonal pairs (x, alpha(x)) for the generators of K,
// together with the plane swap.  alpha must be an involutive automorphism;
// the closure then consists of the pairs over all of K and their swaps.
GroupInput gkAlpha(unsigned conductor, const std::vector<CMat>& kGens,
                   const std::vector<CMat>& alphaGens, const std::string& label) {
  GroupInput in;
  in.conductor = conductor;
  in.dimension = 4;
  for (std::size_t i = 0; i < kGens.size(); ++i)
    in.generators.push_back(blockDiag(kGens[i], alphaGens[i]));
  in.generators.push_back(blockSwap());
  in.symplectic = symplecticGram();
  in.label = label;
  return in;
}

GroupInput adeA(long m) {
  if (m < 1) throw ValidationError("catalog ADE A m requires m >= 1");
  unsigned n = static_cast<unsigned>(m + 1);
  GroupInput in;
  in.conductor = n;
  in.dimension = 2;
  in.generators.push_back(m2(z(n, 1), CycNum(0), CycNum(0), z(n, -1)));
  in.label = "ADE A " + std::to_string(m);
  return in;
}

GroupInput adeD(long m) {
  if (m < 4) throw ValidationError("catalog ADE D m requires m >= 4");
  unsigned n = static_cast<unsigned>(2 * (m - 2));
  GroupInput in;
  in.conductor = n;
  in.dimension = 2;
  in.generators.push_back(m2(z(n, 1), CycNum(0), CycNum(0), z(n, -1)));
  in.generators.push_back(m2(CycNum(0), CycNum(1), CycNum(-1), CycNum(0)));
  in.label = "ADE D " + std::to_string(m);
  return in;
}

GroupInput adeE(long k) {
  GroupInput in;
  in.dimension = 2;
  in.label = "ADE E " + std::to_string(k);
  if (k == 6) {
    in.conductor = 8;
    CycNum i = iOf(8), s = invSqrt2(8);
    in.generators.push_back(m2(i, CycNum(0), CycNum(0), -i));
    in.generators.push_back(m2(s * z(8, 1), s * z(8, 1), s * z(8, 3), s * z(8, 7)));
  } else if (k == 7) {
    in.conductor = 8;
    CycNum s = invSqrt2(8);
    in.generators.push_back(m2(z(8, 1), CycNum(0), CycNum(0), z(8, 7)));
    in.generators.push_back(m2(s * z(8, 1), s * z(8, 1), s * z(8, 3), s * z(8, 7)));
  } else if (k == 8) {
    in.conductor = 10;
    CycNum s = sqrt5(10).inverse();
    in.generators.push_back(m2(z(10, 1), CycNum(0), CycNum(0), z(10, 9)));
    in.generators.push_back(m2(s * (z(10, 2) - z(10, 8)), s * (z(10, 4) - z(10, 6)),
                               s * (z(10, 4) - z(10, 6)), s * (z(10, 8) - z(10, 2))));
    in.generators.push_back(m2(CycNum(0), CycNum(1), CycNum(-1), CycNum(0)));
  } else {
    throw ValidationError("catalog ADE E m requires m in {6, 7, 8}");
  }
  return in;
}

GroupInput order32() {
  GroupInput in;
  in.conductor = 4;
  in.dimension = 4;
  in.label = "order32";
  CycNum i = iOf(4), o = CycNum(0), one = CycNum(1);
  CMat g1(4, 4), g2(4, 4), g3(4, 4), g4(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g1(r, c) = g2(r, c) = g3(r, c) = g4(r, c) = o;
  g1(0, 0) = one; g1(1, 1) = -one; g1(2, 2) = one; g1(3, 3) = -one;
  g2(0, 1) = i; g2(1, 0) = -i; g2(2, 3) = -i; g2(3, 2) = i;
  g3(0, 1) = one; g3(1, 0) = one; g3(2, 3) = one; g3(3, 2) = one;
  g4(0, 3) = one; g4(1, 2) = -one; g4(2, 1) = -one; g4(3, 0) = one;
  in.generators = {g1, g2, g3, g4};
  return in;
}

GroupInput groupG4() {
  GroupInput in;
  in.conductor = 12;
  in.dimension = 4;
  in.label = "G4";
  CycNum i = iOf(12), w = z(12, 4), w2 = z(12, 8);
  CycNum h = Rational(-1, 2);
  CycNum pp = CycNum(1) + i, pm = CycNum(1) - i, mp = CycNum(-1) + i, mm = CycNum(-1) - i;
  CMat a = m2(h * pp * w, h * pp * w, h * mp * w, h * pm * w);
  CMat b = m2(h * pm * w2, h * pm * w2, h * mm * w2, h * pp * w2);
  CMat c = m2(h * pp * w2, h * pm * w2, h * mm * w2, h * pm * w2);
  CMat d = m2(h * pm * w, h * pp * w, h * mp * w, h * pp * w);
  in.generators.push_back(blockDiag(a, b));
  in.generators.push_back(blockDiag(c, d));
  return in;
}

GroupInput typeG(long l, long r) {
  if (l < 1 || r < 1) throw ValidationError("catalog type_G l r requires positive l, r");
  if (r % 2 == 0 || r > l)
    throw ValidationError("catalog type_G l r requires odd r with r <= l");
  long gcdPlus = std::gcd(l, (r + 1) / 2);
  long gcdMinus = std::gcd(l, (r - 1) / 2);
  if (l != gcdPlus * gcdMinus)
    throw ValidationError("catalog type_G l r requires l = gcd(l,(r+1)/2) gcd(l,(r-1)/2)");
  unsigned n = static_cast<unsigned>(std::lcm(2 * l, 4L));
  unsigned f = n / static_cast<unsigned>(2 * l);
  CycNum i = iOf(n), o = CycNum(0);
  CMat k1 = m2(z(n, f), o, o, z(n, -static_cast<long>(f)));
  CMat k2 = m2(o, i, i, o);
  CMat a1 = m2(z(n, f * r), o, o, z(n, -static_cast<long>(f) * r));
  CMat a2 = m2(o, -i, -i, o);
  return gkAlpha(n, {k1, k2}, {a1, a2},
                 "type_G " + std::to_string(l) + " " + std::to_string(r));
}

GroupInput typeK() {
  unsigned n = 8;
  CycNum i = iOf(n), s = invSqrt2(n), o = CycNum(0);
  CMat k1 = m2(i, o, o, -i);
  CMat k2 = m2(s * z(n, 5), s * z(n, 5), s * z(n, 7), s * z(n, 3));
  CMat a1 = m2(o, CycNum(-1), CycNum(1), o);
  CMat a2 = m2(s * z(n, 3), s * z(n, 1), s * z(n, 3), s * z(n, 5));
  return gkAlpha(n, {k1, k2}, {a1, a2}, "type_K");
}

GroupInput typePorQ(bool isP) {
  unsigned n = 8;
  CycNum s = invSqrt2(n), o = CycNum(0);
  CMat k1 = m2(z(n, 1), o, o, z(n, 7));
  CMat k2 = m2(s * z(n, 5), s * z(n, 5), s * z(n, 7), s * z(n, 3));
  CMat a1 = isP ? m2(z(n, 7), o, o, z(n, 1)) : m2(z(n, 5), o, o, z(n, 3));
  CMat a2 = isP ? m2(s * z(n, 3), s * z(n, 7), s * z(n, 5), s * z(n, 5)) : k2;
  return gkAlpha(n, {k1, k2}, {a1, a2}, isP ? "type_P" : "type_Q");
}

// The order-10 icosahedral rotation used by types U and V:
// (1/2) [[phi + i/phi, 1], [-1, phi - i/phi]] with phi the golden ratio.
CMat icosaGen(unsigned n) {
  CycNum i = iOf(n);
  CycNum phi = Rational(1, 2) * (CycNum(1) + sqrt5(n));
  CycNum phiInv = phi - 1;
  CycNum h = Rational(1, 2);
  return m2(h * (phi + i * phiInv), h, -h, h * (phi - i * phiInv));
}

GroupInput typeU() {
  unsigned n = 40;
  CycNum s = invSqrt2(n);
  CMat k1 = icosaGen(n);
  CMat k2 = m2(s * z(n, 25), s * z(n, 25), s * z(n, 35), s * z(n, 15));
  CMat a1 = inverseOf(k1);
  CMat a2 = m2(s * z(n, 15), s * z(n, 35), s * z(n, 25), s * z(n, 25));
  return gkAlpha(n, {k1, k2}, {a1, a2}, "type_U");
}

GroupInput typeV() {
  unsigned n = 20;
  CycNum i = iOf(n), o = CycNum(0);
  CMat k1 = icosaGen(n);
  CMat k2 = m2(i, o, o, -i);
  CMat a1 = CMat(k1 * k1 * k1 * k2 * k1);
  CMat a2 = m2(o, i, i, o);
  return gkAlpha(n, {k1, k2}, {a1, a2}, "type_V");
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

long parseLong(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("expected an integer for " + what + ", got '" + s + "'");
  }
}

}  // namespace

GroupInput catalogGroup(const std::string& tag) {
  std::vector<std::string> t = tokens(tag);
  if (t.empty()) throw ValidationError("empty catalog tag");
  if (t[0] == "ADE") {
    if (t.size() != 3 || (t[1] != "A" && t[1] != "D" && t[1] != "E"))
      throw ValidationError("catalog ADE tags have the form 'ADE A|D|E m'");
    long m = parseLong(t[2], "the ADE index");
    if (t[1] == "A") return adeA(m);
    if (t[1] == "D") return adeD(m);
    return adeE(m);
  }
  if (t[0] == "order32" && t.size() == 1) return order32();
  if (t[0] == "G4" && t.size() == 1) return groupG4();
  if (t[0] == "type_G") {
    if (t.size() != 3) throw ValidationError("catalog type_G takes two integers l r");
    return typeG(parseLong(t[1], "l"), parseLong(t[2], "r"));
  }
  if (t.size() == 1) {
    if (t[0] == "type_K") return typeK();
    if (t[0] == "type_P") return typePorQ(true);
    if (t[0] == "type_Q") return typePorQ(false);
    if (t[0] == "type_U") return typeU();
    if (t[0] == "type_V") return typeV();
  }
  throw ValidationError("unknown catalog tag '" + tag + "'");
}

GroupInput parseGroupText(const std::string& text, const std::string& origin) {
  GroupInput in;
  bool haveConductor = false, haveDimension = false;
  std::string catalogTag;
  CMat pending;
  unsigned pendingRow = 0, pendingRows = 0;
  bool pendingSymplectic = false;

  auto fail = [&origin](unsigned line, const std::string& msg) -> void {
    throw ValidationError(origin + ":" + std::to_string(line) + ": " + msg);
  };

  std::istringstream stream(text);
  std::string raw;
  unsigned lineNo = 0;
  while (std::getline(stream, raw)) {
    ++lineNo;
    std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::string> t = tokens(line);
    if (t.empty()) continue;

    if (pendingRows > 0) {
      std::vector<std::string> cells;
      std::string joined;
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) joined += ' ';
        joined += t[i];
      }
      std::size_t start = 0;
      for (;;) {
        std::size_t comma = joined.find(',', start);
        cells.push_back(joined.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      if (cells.size() != in.dimension)
        fail(lineNo, "expected " + std::to_string(in.dimension) +
                         " comma-separated entries, got " + std::to_string(cells.size()));
      for (unsigned c = 0; c < in.dimension; ++c) {
        try {
          pending(pendingRow, c) = parseScalar(cells[c], in.conductor);
        } catch (const ValidationError& e) {
          fail(lineNo, std::string("entry ") + std::to_string(c + 1) + ": " + e.what());
        }
      }
      ++pendingRow;
      if (pendingRow == pendingRows) {
        if (pendingSymplectic)
          in.symplectic = pending;
        else
          in.generators.push_back(pending);
        pendingRows = 0;
      }
      continue;
    }

    const std::string& key = t[0];
    if (key == "conductor") {
      if (haveConductor) fail(lineNo, "duplicate conductor line");
      if (t.size() != 2) fail(lineNo, "conductor takes one positive integer");
      long v = 0;
      try {
        v = parseLong(t[1], "conductor");
      } catch (const ValidationError& e) {
        fail(lineNo, e.what());
      }
      if (v < 1) fail(lineNo, "conductor must be positive");
      in.conductor = static_cast<unsigned>(v);
      haveConductor = true;
    } else if (key == "dimension") {
      if (haveDimension) fail(lineNo, "duplicate dimension line");
      if (t.size() != 2) fail(lineNo, "dimension takes one positive integer");
      long v = 0;
      try {
        v = parseLong(t[1], "dimension");
      } catch (const ValidationError& e) {
        fail(lineNo, e.what());
      }
      if (v < 1) fail(lineNo, "dimension must be positive");
      in.dimension = static_cast<unsigned>(v);
      haveDimension = true;
    } else if (key == "generator" || key == "symplectic") {
      if (t.size() != 1) fail(lineNo, key + " starts a matrix and takes no arguments");
      if (!haveConductor || !haveDimension)
        fail(lineNo, key + " requires conductor and dimension to be declared first");
      if (key == "symplectic" && in.symplectic)
        fail(lineNo, "duplicate symplectic form");
      pending = CMat(in.dimension, in.dimension);
      pendingRow = 0;
      pendingRows = in.dimension;
      pendingSymplectic = (key == "symplectic");
    } else if (key == "catalog") {
      if (!catalogTag.empty()) fail(lineNo, "duplicate catalog line");
      if (t.size() < 2) fail(lineNo, "catalog takes a tag");
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (i > 1) catalogTag += ' ';
        catalogTag += t[i];
      }
    } else {
      fail(lineNo, "unknown directive '" + key + "'");
    }
  }

  if (pendingRows > 0)
    fail(lineNo, "input ended inside a matrix (" + std::to_string(pendingRow) + " of " +
                     std::to_string(pendingRows) + " rows read)");
  if (!catalogTag.empty()) {
    if (haveConductor || haveDimension || !in.generators.empty() || in.symplectic)
      fail(lineNo, "a catalog line cannot be combined with explicit fields");
    try {
      return catalogGroup(catalogTag);
    } catch (const ValidationError& e) {
      fail(lineNo, e.what());
    }
  }
  if (!haveConductor) throw ValidationError(origin + ": missing conductor line");
  if (!haveDimension) throw ValidationError(origin + ": missing dimension line");
  if (in.generators.empty())
    throw ValidationError(origin + ": no generator matrices");
  return in;
}

GroupInput loadGroupFile(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot read group file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << file.rdbuf();
  GroupInput in = parseGroupText(buffer.str(), path.string());
  in.label = path.stem().string();
  return in;
}

}  // namespace coxmin
