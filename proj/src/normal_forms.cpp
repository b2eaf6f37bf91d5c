#include "gradflow/normal_forms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

namespace gradflow::nf {

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  num_ = g ? n / g : 0;
  den_ = g ? d / g : 1;
}

std::string Rational::to_string() const {
  return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
}

std::optional<Rational> Rational::parse(std::string_view s) {
  auto parse_int = [](std::string_view t) -> std::optional<std::int64_t> {
    if (t.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (t[0] == '-' || t[0] == '+') {
      neg = t[0] == '-';
      i = 1;
    }
    if (i == t.size()) return std::nullopt;
    std::int64_t v = 0;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return std::nullopt;
      v = v * 10 + (t[i] - '0');
    }
    return neg ? -v : v;
  };
  const auto slash = s.find('/');
  const auto n = parse_int(s.substr(0, slash));
  if (!n) return std::nullopt;
  if (slash == std::string_view::npos) return Rational(*n);
  const auto d = parse_int(s.substr(slash + 1));
  if (!d || *d == 0) return std::nullopt;
  return Rational(*n, *d);
}

Rational operator+(Rational a, Rational b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
Rational operator-(Rational a, Rational b) { return a + (-b); }
Rational operator*(Rational a, Rational b) { return Rational(a.num_ * b.num_, a.den_ * b.den_); }
Rational operator/(Rational a, Rational b) { return Rational(a.num_ * b.den_, a.den_ * b.num_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(Rational c) { add_term({0, 0, 0}, c); }

Polynomial Polynomial::x() {
  Polynomial p;
  p.add_term({1, 0, 0}, 1);
  return p;
}
Polynomial Polynomial::y() {
  Polynomial p;
  p.add_term({0, 1, 0}, 1);
  return p;
}
Polynomial Polynomial::a() {
  Polynomial p;
  p.add_term({0, 0, 1}, 1);
  return p;
}

void Polynomial::add_term(const Exponent& e, Rational c) {
  if (c == Rational(0)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second = it->second + c;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial out;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    out.add_term(f, c * Rational(e[var]));
  }
  return out;
}

double Polynomial::eval(double x, double y, double a) const {
  double s = 0;
  for (const auto& [e, c] : terms_) {
    s += c.value() * std::pow(x, e[0]) * std::pow(y, e[1]) * std::pow(a, e[2]);
  }
  return s;
}

Polynomial Polynomial::reflect_y() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) out.add_term(e, e[1] % 2 ? -c : c);
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first.
  std::vector<std::pair<Exponent, Rational>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& l, const auto& r) {
    return l.first[0] + l.first[1] + l.first[2] > r.first[0] + r.first[1] + r.first[2];
  });
  for (const auto& [e, c] : ts) {
    const bool neg = c < Rational(0);
    const Rational mag = neg ? -c : c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    const bool unit = mag == Rational(1);
    const bool constant = e[0] + e[1] + e[2] == 0;
    if (!unit || constant) os << mag.to_string();
    static constexpr char kVars[] = {'x', 'y', 'a'};
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      os << kVars[v];
      if (e[v] > 1) os << '^' << e[v];
    }
  }
  return os.str();
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
  Polynomial out = p;
  for (const auto& [e, c] : q.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [e, c] : terms_) out.add_term(e, -c);
  return out;
}

Polynomial operator-(const Polynomial& p, const Polynomial& q) { return p + (-q); }

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  for (const auto& [e, c] : p.terms_) {
    for (const auto& [f, d] : q.terms_) {
      out.add_term({e[0] + f[0], e[1] + f[1], e[2] + f[2]}, c * d);
    }
  }
  return out;
}

Polynomial pow(const Polynomial& p, int k) {
  Polynomial out(Rational(1));
  for (int i = 0; i < k; ++i) out = out * p;
  return out;
}

// ---------------------------------------------------------------------------
// Families

const char* to_string(FamilyId id) {
  switch (id) {
    case FamilyId::SN_source: return "SN_source";
    case FamilyId::SN_sink: return "SN_sink";
    case FamilyId::SC: return "SC";
    case FamilyId::BSN_source: return "BSN_source";
    case FamilyId::BSN_sink: return "BSN_sink";
    case FamilyId::BDS: return "BDS";
    case FamilyId::SS_sink: return "SS_sink";
    case FamilyId::SS_source: return "SS_source";
  }
  return "?";
}

std::optional<FamilyId> parse_family(std::string_view s) {
  auto norm = [](std::string_view t) {
    std::string r;
    for (char ch : t) r += ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return r;
  };
  const std::string want = norm(s);
  for (FamilyId id : kAllFamilies) {
    if (norm(to_string(id)) == want) return id;
  }
  return std::nullopt;
}

PlanarFamily make_family(FamilyId id, std::optional<Rational> c) {
  const Polynomial x = Polynomial::x(), y = Polynomial::y(), a = Polynomial::a();
  const Polynomial x2 = x * x, y2 = y * y;
  PlanarFamily f{id, {}, {}, Domain::Plane, std::nullopt, {}};
  switch (id) {
    case FamilyId::SN_source:
      f.p = x;
      f.q = y2 + a;
      break;
    case FamilyId::SN_sink:
      f.p = -x;
      f.q = -y2 - a;
      f.note = "flow reversal of SN_source";
      break;
    case FamilyId::SC:
      f.p = x2 - y2 - Polynomial(1);
      f.q = Polynomial(-2) * x * y + a;
      break;
    case FamilyId::BSN_source:
      f.p = x2 + a;
      f.q = y;
      f.domain = Domain::UpperHalfPlane;
      break;
    case FamilyId::BSN_sink:
      f.p = x2 + a;
      f.q = -y;
      f.domain = Domain::UpperHalfPlane;
      break;
    case FamilyId::BDS:
      f.c = c.value_or(Rational(0));
      f.p = x2 - y2 + a;
      f.q = Polynomial(-2) * x * y + Polynomial(*f.c) * a * y;
      f.domain = Domain::UpperHalfPlane;
      break;
    case FamilyId::SS_sink:
    case FamilyId::SS_source:
      f.c = c.value_or(Rational(id == FamilyId::SS_sink ? 1 : -1));
      f.p = x2 - y2 + a;
      f.q = Polynomial(2) * x * y + Polynomial(*f.c) * a * y;
      f.domain = Domain::UpperHalfPlane;
      if (*f.c == Rational(0)) f.note = "c = 0 gives a center at a > 0";
      break;
  }
  return f;
}

Box default_window(const PlanarFamily& fam) {
  return fam.domain == Domain::Plane ? Box{-2, 2, -2, 2} : Box{-2, 2, 0, 2};
}

const char* to_string(ZeroType t) {
  switch (t) {
    case ZeroType::Source: return "source";
    case ZeroType::Sink: return "sink";
    case ZeroType::Saddle: return "saddle";
    case ZeroType::Center: return "center";
    case ZeroType::Degenerate: return "degenerate";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Zero finding

namespace {

struct Interval {
  double lo, hi;
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

Interval operator+(Interval a, Interval b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator*(Interval a, Interval b) {
  const double p[] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}
Interval ipow(Interval v, int k) {
  if (k == 0) return {1, 1};
  if (k % 2 == 0 && v.contains_zero()) {
    const double m = std::max(std::abs(v.lo), std::abs(v.hi));
    return {0, std::pow(m, k)};
  }
  const double l = std::pow(v.lo, k), h = std::pow(v.hi, k);
  return {std::min(l, h), std::max(l, h)};
}

Interval eval_box(const Polynomial& p, Interval x, Interval y, double a) {
  Interval s{0, 0};
  for (const auto& [e, c] : p.terms()) {
    const double k = c.value() * std::pow(a, e[2]);
    const Interval m = ipow(x, e[0]) * ipow(y, e[1]);
    s = s + Interval{std::min(k * m.lo, k * m.hi), std::max(k * m.lo, k * m.hi)};
  }
  const double pad = 1e-12 * (1 + std::max(std::abs(s.lo), std::abs(s.hi)));
  return {s.lo - pad, s.hi + pad};
}

struct Field {
  Polynomial p, q, px, py, qx, qy;
  // Reflected copies used below the boundary line.
  Polynomial rp, rq;
  bool doubled = false;

  explicit Field(const PlanarFamily& fam)
      : p(fam.p),
        q(fam.q),
        px(fam.p.derivative(0)),
        py(fam.p.derivative(1)),
        qx(fam.q.derivative(0)),
        qy(fam.q.derivative(1)),
        rp(fam.p.reflect_y()),
        rq(-fam.q.reflect_y()),
        doubled(fam.domain == Domain::UpperHalfPlane) {}

  std::pair<double, double> at(double x, double y, double a) const {
    if (doubled && y < 0) return {rp.eval(x, y, a), rq.eval(x, y, a)};
    return {p.eval(x, y, a), q.eval(x, y, a)};
  }
};

struct Polished {
  double x, y, residual, det, trace;
  bool ok;
};

Polished newton(const Field& f, double x, double y, double a) {
  auto res = [&](double u, double v) {
    return std::hypot(f.p.eval(u, v, a), f.q.eval(u, v, a));
  };
  double r = res(x, y);
  for (int it = 0; it < kNewtonMaxIter && r > 0; ++it) {
    const double P = f.p.eval(x, y, a), Q = f.q.eval(x, y, a);
    const double j11 = f.px.eval(x, y, a), j12 = f.py.eval(x, y, a);
    const double j21 = f.qx.eval(x, y, a), j22 = f.qy.eval(x, y, a);
    // Regularized normal equations; the shift only matters where J is singular.
    const double a11 = j11 * j11 + j21 * j21, a12 = j11 * j12 + j21 * j22;
    const double a22 = j12 * j12 + j22 * j22;
    const double lam = 1e-28 * (a11 + a22) + 1e-300;
    const double b1 = -(j11 * P + j21 * Q), b2 = -(j12 * P + j22 * Q);
    const double det = (a11 + lam) * (a22 + lam) - a12 * a12;
    double dx = ((a22 + lam) * b1 - a12 * b2) / det;
    double dy = ((a11 + lam) * b2 - a12 * b1) / det;
    double t = 1;
    double nr = res(x + dx, y + dy);
    for (int h = 0; h < 30 && nr > r; ++h) {
      t /= 2;
      nr = res(x + t * dx, y + t * dy);
    }
    if (nr > r) break;
    x += t * dx;
    y += t * dy;
    r = nr;
    if (r < kResidualTol && std::hypot(t * dx, t * dy) < 1e-15) break;
  }
  const double j11 = f.px.eval(x, y, a), j12 = f.py.eval(x, y, a);
  const double j21 = f.qx.eval(x, y, a), j22 = f.qy.eval(x, y, a);
  return {x, y, r, j11 * j22 - j12 * j21, j11 + j22, r < kResidualTol};
}

double wrap(double d) {
  while (d > std::numbers::pi) d -= 2 * std::numbers::pi;
  while (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
  return d;
}

double arc_angle(const Field& f, double cx, double cy, double r, double a, double t0,
                 double t1, double g0, double g1, int depth) {
  const double d = wrap(g1 - g0);
  if (std::abs(d) < std::numbers::pi / 4) return d;
  if (depth > 24) throw AmbiguousWinding("winding refinement limit reached");
  const double tm = (t0 + t1) / 2;
  const auto [u, v] = f.at(cx + r * std::cos(tm), cy + r * std::sin(tm), a);
  if (std::hypot(u, v) < 1e-300) throw AmbiguousWinding("field vanishes on the circle");
  const double gm = std::atan2(v, u);
  return arc_angle(f, cx, cy, r, a, t0, tm, g0, gm, depth + 1) +
         arc_angle(f, cx, cy, r, a, tm, t1, gm, g1, depth + 1);
}

int winding(const Field& f, double cx, double cy, double r, double a) {
  constexpr int kSamples = 360;
  std::vector<double> g(kSamples + 1);
  for (int k = 0; k <= kSamples; ++k) {
    const double t = 2 * std::numbers::pi * k / kSamples;
    const auto [u, v] = f.at(cx + r * std::cos(t), cy + r * std::sin(t), a);
    if (std::hypot(u, v) < 1e-300) throw AmbiguousWinding("field vanishes on the circle");
    g[k] = std::atan2(v, u);
  }
  double total = 0;
  for (int k = 0; k < kSamples; ++k) {
    total += arc_angle(f, cx, cy, r, a, 2 * std::numbers::pi * k / kSamples,
                       2 * std::numbers::pi * (k + 1) / kSamples, g[k], g[k + 1], 0);
  }
  return static_cast<int>(std::lround(total / (2 * std::numbers::pi)));
}

ZeroType classify(double det, double trace, bool degenerate) {
  if (degenerate) return ZeroType::Degenerate;
  if (det < 0) return ZeroType::Saddle;
  if (std::abs(trace) < 1e-9) return ZeroType::Center;
  return trace > 0 ? ZeroType::Source : ZeroType::Sink;
}

}  // namespace

int poincare_index(const PlanarFamily& fam, double a, double x, double y, double radius) {
  return winding(Field(fam), x, y, radius, a);
}

std::vector<ZeroRecord> zeros(const PlanarFamily& fam, double a) {
  return zeros(fam, a, default_window(fam));
}

std::vector<ZeroRecord> zeros(const PlanarFamily& fam, double a, const Box& window) {
  const Field f(fam);
  const bool half = fam.domain == Domain::UpperHalfPlane;
  Box w = window;
  if (half) w.y0 = std::max(w.y0, 0.0);

  std::vector<Polished> found;
  std::vector<Box> failed;
  auto polish = [&](double x, double y, const Box& b) {
    const Polished z = newton(f, x, y, a);
    if (z.ok) {
      found.push_back(z);
    } else {
      failed.push_back(b);
    }
  };

  std::vector<Box> stack = {w};
  while (!stack.empty()) {
    const Box b = stack.back();
    stack.pop_back();
    const Interval bx{b.x0, b.x1}, by{b.y0, b.y1};
    if (!eval_box(f.p, bx, by, a).contains_zero() || !eval_box(f.q, bx, by, a).contains_zero()) {
      continue;
    }
    if (std::max(b.x1 - b.x0, b.y1 - b.y0) < kBoxFloor) {
      polish((b.x0 + b.x1) / 2, (b.y0 + b.y1) / 2, b);
      continue;
    }
    const double mx = (b.x0 + b.x1) / 2, my = (b.y0 + b.y1) / 2;
    stack.push_back({b.x0, mx, b.y0, my});
    stack.push_back({mx, b.x1, b.y0, my});
    stack.push_back({b.x0, mx, my, b.y1});
    stack.push_back({mx, b.x1, my, b.y1});
  }

  if (half) {
    // Zeros on y = 0 are the roots of P(x, 0, a).
    std::vector<std::pair<double, double>> segs = {{w.x0, w.x1}};
    const Interval zero{0, 0};
    while (!segs.empty()) {
      const auto [l, r] = segs.back();
      segs.pop_back();
      if (!eval_box(f.p, {l, r}, zero, a).contains_zero()) continue;
      if (r - l < kBoxFloor) {
        const double m = (l + r) / 2;
        double x = m;
        for (int it = 0; it < kNewtonMaxIter; ++it) {
          const double v = f.p.eval(x, 0, a), dv = f.px.eval(x, 0, a);
          if (std::abs(v) < kResidualTol * 1e-3 || dv == 0) break;
          x -= v / dv;
        }
        polish(x, 0, Box{l, r, 0, 0});
        continue;
      }
      segs.push_back({l, (l + r) / 2});
      segs.push_back({(l + r) / 2, r});
    }
  }

  // Merge repeated hits; degenerate zeros are only located to about the
  // square root of the residual.
  std::vector<Polished> uniq;
  for (const Polished& z : found) {
    if (half && z.y < -1e-9) continue;
    if (z.x < w.x0 - 1e-8 || z.x > w.x1 + 1e-8 || z.y < w.y0 - 1e-8 || z.y > w.y1 + 1e-8) continue;
    bool merged = false;
    for (Polished& u : uniq) {
      const double d = std::hypot(u.x - z.x, u.y - z.y);
      const bool degen = std::abs(u.det) < kDegenerateDet || std::abs(z.det) < kDegenerateDet;
      if (d < 1e-7 || (degen && d < 1e-3)) {
        if (z.residual < u.residual) u = z;
        merged = true;
        break;
      }
    }
    if (!merged) uniq.push_back(z);
  }
  for (const Box& b : failed) {
    const double cx = (b.x0 + b.x1) / 2, cy = (b.y0 + b.y1) / 2;
    const bool near = std::any_of(uniq.begin(), uniq.end(), [&](const Polished& z) {
      return std::hypot(z.x - cx, z.y - cy) < 1e-4;
    });
    if (!near) {
      std::ostringstream os;
      os << "Newton did not converge in box [" << b.x0 << ", " << b.x1 << "] x [" << b.y0 << ", "
         << b.y1 << "]";
      throw NonConvergence(os.str(), b);
    }
  }

  std::vector<ZeroRecord> out;
  for (const Polished& z : uniq) {
    ZeroRecord rec;
    rec.x = z.x;
    rec.y = z.y;
    rec.on_boundary = half && std::abs(z.y) < 1e-9;
    if (rec.on_boundary) rec.y = 0;
    rec.degenerate = std::abs(z.det) < kDegenerateDet;
    rec.type = classify(z.det, z.trace, rec.degenerate);
    rec.residual = z.residual;
    const double tol = 1e-8;
    const bool on_side = std::abs(z.x - w.x0) < tol || std::abs(z.x - w.x1) < tol ||
                         std::abs(z.y - w.y1) < tol || (!half && std::abs(z.y - w.y0) < tol) ||
                         (half && w.y0 > 0 && std::abs(z.y - w.y0) < tol);
    if (on_side) {
      std::ostringstream os;
      os << "zero at (" << z.x << ", " << z.y << ") lies on the window boundary";
      throw ZeroOnWindowBoundary(os.str());
    }
    out.push_back(rec);
  }

  // Index circles avoid every other zero, including mirror images below y = 0.
  for (ZeroRecord& z : out) {
    double dmin = 1.0;
    for (const ZeroRecord& o : out) {
      if (&o != &z) dmin = std::min(dmin, std::hypot(o.x - z.x, o.y - z.y));
      if (half && !o.on_boundary) dmin = std::min(dmin, std::hypot(o.x - z.x, -o.y - z.y));
    }
    const double r = std::min(0.25, 0.4 * dmin);
    z.index = winding(f, z.x, z.y, r, a);
  }
  std::sort(out.begin(), out.end(), [](const ZeroRecord& l, const ZeroRecord& r) {
    return std::pair(l.y, l.x) < std::pair(r.y, r.x);
  });
  return out;
}

int doubled_total(const PlanarFamily& fam, const std::vector<ZeroRecord>& zs) {
  int t = 0;
  for (const ZeroRecord& z : zs) {
    t += (fam.domain == Domain::UpperHalfPlane && !z.on_boundary ? 2 : 1) * z.index;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Catalog and verification

std::vector<ExpectedZero> catalog(FamilyId id, double a) {
  using T = ZeroType;
  const int s = a < 0 ? -1 : (a > 0 ? 1 : 0);
  std::vector<ExpectedZero> z;
  switch (id) {
    case FamilyId::SN_source:
    case FamilyId::SN_sink:
      if (s < 0) {
        z = {{false, id == FamilyId::SN_source ? T::Source : T::Sink, 1}, {false, T::Saddle, -1}};
      } else if (s == 0) {
        z = {{false, T::Degenerate, 0}};
      }
      break;
    case FamilyId::SC:
      z = {{false, T::Saddle, -1}, {false, T::Saddle, -1}};
      break;
    case FamilyId::BSN_source:
    case FamilyId::BSN_sink:
      if (s < 0) {
        z = {{true, id == FamilyId::BSN_source ? T::Source : T::Sink, 1}, {true, T::Saddle, -1}};
      } else if (s == 0) {
        z = {{true, T::Degenerate, 0}};
      }
      break;
    case FamilyId::BDS:
      if (s < 0) {
        z = {{true, T::Saddle, -1}, {true, T::Saddle, -1}};
      } else if (s == 0) {
        z = {{true, T::Degenerate, -2}};
      } else {
        z = {{false, T::Saddle, -1}};
      }
      break;
    case FamilyId::SS_sink:
    case FamilyId::SS_source:
      if (s < 0) {
        z = {{true, T::Source, 1}, {true, T::Sink, 1}};
      } else if (s == 0) {
        z = {{true, T::Degenerate, 2}};
      } else {
        z = {{false, id == FamilyId::SS_sink ? T::Sink : T::Source, 1}};
      }
      break;
  }
  std::sort(z.begin(), z.end());
  return z;
}

namespace {

std::vector<ExpectedZero> signature(const std::vector<ZeroRecord>& zs) {
  std::vector<ExpectedZero> s;
  for (const ZeroRecord& z : zs) s.push_back({z.on_boundary, z.type, z.index});
  std::sort(s.begin(), s.end());
  return s;
}

std::string describe(const std::vector<ExpectedZero>& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << (i ? ", " : "") << (s[i].on_boundary ? "boundary " : "") << to_string(s[i].type) << " "
       << (s[i].index > 0 ? "+" : "") << s[i].index;
  }
  os << "}";
  return os.str();
}

std::string index_multiset(const std::vector<ZeroRecord>& zs) {
  std::vector<int> idx;
  for (const ZeroRecord& z : zs) idx.push_back(z.index);
  std::sort(idx.begin(), idx.end());
  std::ostringstream os;
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? " " : "") << idx[i];
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << (std::abs(v) < 5e-13 ? 0.0 : v);
  return os.str();
}

}  // namespace

FamilyReport verify_family(FamilyId id, std::span<const double> as) {
  static constexpr double kDefault[] = {-1, 0, 1};
  if (as.empty()) as = kDefault;
  FamilyReport rep{make_family(id), {}, true};
  std::optional<int> total;
  for (double a : as) {
    FamilyRow row;
    row.a = a;
    try {
      row.zeros = zeros(rep.family, a);
      row.total_index = doubled_total(rep.family, row.zeros);
      const auto got = signature(row.zeros), want = catalog(id, a);
      if (got != want) {
        row.ok = false;
        row.detail = "expected " + describe(want) + ", found " + describe(got);
      }
      if (total && *total != row.total_index) {
        row.ok = false;
        row.detail += (row.detail.empty() ? "" : "; ") + std::string("index total changed");
      }
      total = row.total_index;
    } catch (const std::exception& e) {
      row.ok = false;
      row.detail = e.what();
    }
    rep.ok = rep.ok && row.ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string FamilyReport::to_text() const {
  std::ostringstream os;
  os << to_string(family.id) << ": P = " << family.p.to_string() << ", Q = " << family.q.to_string()
     << (family.domain == Domain::UpperHalfPlane ? "  (y >= 0)" : "") << "\n";
  if (!family.note.empty()) os << "  note: " << family.note << "\n";
  for (const FamilyRow& r : rows) {
    os << "  a = " << fmt(r.a) << ": " << r.zeros.size() << " zero(s), index total "
       << r.total_index << (r.ok ? "  ok" : "  MISMATCH") << "\n";
    for (const ZeroRecord& z : r.zeros) {
      os << "    (" << fmt(z.x) << ", " << fmt(z.y) << ") " << (z.on_boundary ? "boundary " : "")
         << to_string(z.type) << " index " << z.index << "\n";
    }
    if (!r.detail.empty()) os << "    " << r.detail << "\n";
  }
  return os.str();
}

std::string FamilyReport::to_csv(bool header) const {
  std::ostringstream os;
  if (header) os << "family,a,zeroCount,indexMultiset,status\n";
  for (const FamilyRow& r : rows) {
    os << to_string(family.id) << ',' << fmt(r.a) << ',' << r.zeros.size() << ','
       << index_multiset(r.zeros) << ',' << (r.ok ? "ok" : "mismatch") << '\n';
  }
  return os.str();
}

const std::vector<Catastrophe>& catastrophes() {
  static const std::vector<Catastrophe> cats = [] {
    const Polynomial x = Polynomial::x(), y = Polynomial::y(), a = Polynomial::a();
    const Polynomial cube = Polynomial(Rational(1, 3)) * pow(x, 3) + a * x;
    const Polynomial half_y2 = Polynomial(Rational(1, 2)) * y * y;
    return std::vector<Catastrophe>{
        {FamilyId::BSN_source, cube + half_y2},
        {FamilyId::BSN_sink, cube - half_y2},
        {FamilyId::BDS, cube - x * y * y},
    };
  }();
  return cats;
}

GradientCheck gradient_consistency(const Polynomial& f, const PlanarFamily& fam) {
  const Polynomial comps[2][2] = {{f.derivative(0), fam.p}, {f.derivative(1), fam.q}};
  static constexpr const char* kNames[] = {"df/dx vs P", "df/dy vs Q"};
  for (int k = 0; k < 2; ++k) {
    const Polynomial diff = comps[k][0] - comps[k][1];
    if (diff.terms().empty()) continue;
    const auto& [e, c] = *diff.terms().begin();
    Polynomial term = Polynomial(c);
    term = term * pow(Polynomial::x(), e[0]) * pow(Polynomial::y(), e[1]) *
           pow(Polynomial::a(), e[2]);
    return {false, std::string(kNames[k]) + ": differs by " + term.to_string()};
  }
  return {true, {}};
}

GradientCheck gradient_consistency(const Catastrophe& cat) {
  return gradient_consistency(cat.f, make_family(cat.id));
}

CInvarianceReport c_invariance(FamilyId id, std::span<const Rational> cs) {
  if (id != FamilyId::BDS && id != FamilyId::SS_sink && id != FamilyId::SS_source) {
    throw std::invalid_argument("c is only defined for the BDS and SS families");
  }
  CInvarianceReport rep{id, {cs.begin(), cs.end()}, {}, true, {}};
  for (const Rational& c : cs) {
    const PlanarFamily fam = make_family(id, c);
    std::vector<std::vector<ExpectedZero>> per_a;
    bool center = false;
    for (double a : {-1.0, 0.0, 1.0}) {
      const auto zs = zeros(fam, a);
      for (const ZeroRecord& z : zs) center = center || z.type == ZeroType::Center;
      per_a.push_back(signature(zs));
    }
    if (center) rep.non_typical.push_back(c);
    if (!rep.signatures.empty() && per_a != rep.signatures.front()) rep.identical = false;
    rep.signatures.push_back(std::move(per_a));
  }
  return rep;
}

std::string CInvarianceReport::to_text() const {
  std::ostringstream os;
  os << to_string(id) << " over c in {";
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? ", " : "") << cs[i].to_string();
  os << "}: " << (identical ? "identical" : "different") << " catalogs\n";
  static constexpr const char* kA[] = {"-1", "0", "1"};
  for (std::size_t i = 0; i < cs.size(); ++i) {
    os << "  c = " << cs[i].to_string() << ":";
    for (std::size_t k = 0; k < signatures[i].size(); ++k) {
      os << " a=" << kA[k] << " " << describe(signatures[i][k]);
    }
    os << "\n";
  }
  for (const Rational& c : non_typical) os << "  c = " << c.to_string() << " is non-typical\n";
  return os.str();
}

}  // namespace gradflow::nf
