#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gradflow::nf {

class Rational {
 public:
  Rational(std::int64_t n = 0, std::int64_t d = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;
  // Accepts "p", "-p" or "p/q".
  static std::optional<Rational> parse(std::string_view s);

  friend Rational operator+(Rational a, Rational b);
  friend Rational operator-(Rational a, Rational b);
  friend Rational operator*(Rational a, Rational b);
  friend Rational operator/(Rational a, Rational b);
  Rational operator-() const { return Rational(-num_, den_); }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

// Exponents of x, y and the parameter a.
using Exponent = std::array<int, 3>;

// Polynomial in (x, y, a) with exact rational coefficients. Zero terms are
// never stored, so equality is structural.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(Rational c);  // NOLINT: constants convert implicitly

  static Polynomial x();
  static Polynomial y();
  static Polynomial a();

  const std::map<Exponent, Rational>& terms() const { return terms_; }
  int degree() const;

  Polynomial derivative(int var) const;  // 0: x, 1: y, 2: a
  double eval(double x, double y, double a) const;
  // Substitutes y -> -y.
  Polynomial reflect_y() const;
  std::string to_string() const;

  friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator-(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void add_term(const Exponent& e, Rational c);
  std::map<Exponent, Rational> terms_;
};

Polynomial pow(const Polynomial& p, int k);

enum class FamilyId { SN_source, SN_sink, SC, BSN_source, BSN_sink, BDS, SS_sink, SS_source };
inline constexpr std::array<FamilyId, 8> kAllFamilies = {
    FamilyId::SN_source, FamilyId::SN_sink,  FamilyId::SC,      FamilyId::BSN_source,
    FamilyId::BSN_sink,  FamilyId::BDS,      FamilyId::SS_sink, FamilyId::SS_source};

const char* to_string(FamilyId id);
// Accepts the names above in any case, with '-' or '_'.
std::optional<FamilyId> parse_family(std::string_view s);

enum class Domain { Plane, UpperHalfPlane };

struct PlanarFamily {
  FamilyId id;
  Polynomial p;
  Polynomial q;
  Domain domain = Domain::Plane;
  std::optional<Rational> c;  // coefficient of a*y in Q for the BDS and SS families
  std::string note;
};

// SS_sink uses c = 1 and SS_source c = -1 unless c is given; BDS defaults to 0.
PlanarFamily make_family(FamilyId id, std::optional<Rational> c = std::nullopt);

struct Box {
  double x0, x1, y0, y1;
};

// The default search window: [-2,2]^2, or [-2,2]x[0,2] on the half-plane.
Box default_window(const PlanarFamily& fam);

enum class ZeroType { Source, Sink, Saddle, Center, Degenerate };
const char* to_string(ZeroType t);

struct ZeroRecord {
  double x = 0;
  double y = 0;
  bool on_boundary = false;
  bool degenerate = false;
  ZeroType type = ZeroType::Degenerate;
  // Winding number of the field, or of the reflected double for boundary zeros.
  int index = 0;
  double residual = 0;
};

class ZeroOnWindowBoundary : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, Box box) : std::runtime_error(what), box_(box) {}
  const Box& box() const { return box_; }

 private:
  Box box_;
};
class AmbiguousWinding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kResidualTol = 1e-10;
inline constexpr int kNewtonMaxIter = 50;
inline constexpr double kBoxFloor = 1e-6;
inline constexpr double kDegenerateDet = 1e-8;

// All zeros in the window, sorted by (y, x), each with its index.
std::vector<ZeroRecord> zeros(const PlanarFamily& fam, double a, const Box& window);
std::vector<ZeroRecord> zeros(const PlanarFamily& fam, double a);

// Winding number of the field around the circle |z - (x, y)| = radius. On the
// half-plane the field is first extended to y < 0 by (P(x,-y), -Q(x,-y)).
int poincare_index(const PlanarFamily& fam, double a, double x, double y, double radius);

// Sum of indices counting interior zeros of half-plane families twice.
int doubled_total(const PlanarFamily& fam, const std::vector<ZeroRecord>& zs);

// Expected (on_boundary, type, index) triples at one parameter value.
struct ExpectedZero {
  bool on_boundary;
  ZeroType type;
  int index;
  friend auto operator<=>(const ExpectedZero&, const ExpectedZero&) = default;
};

std::vector<ExpectedZero> catalog(FamilyId id, double a);

struct FamilyRow {
  double a = 0;
  std::vector<ZeroRecord> zeros;
  int total_index = 0;
  bool ok = true;
  std::string detail;
};

struct FamilyReport {
  PlanarFamily family;
  std::vector<FamilyRow> rows;
  bool ok = true;

  std::string to_text() const;
  // family,a,zeroCount,indexMultiset,status
  std::string to_csv(bool header = true) const;
};

// Checks zero counts, types and indices against the catalog for each a, and
// that the doubled index total is the same at every a.
FamilyReport verify_family(FamilyId id, std::span<const double> as = {});

struct Catastrophe {
  FamilyId id;  // BSN_source, BSN_sink or BDS
  Polynomial f;
};

const std::vector<Catastrophe>& catastrophes();

struct GradientCheck {
  bool ok = true;
  std::string mismatch;  // first differing monomial, empty when ok
};

// Exact comparison of grad f with the family's (P, Q).
GradientCheck gradient_consistency(const Catastrophe& cat);
GradientCheck gradient_consistency(const Polynomial& f, const PlanarFamily& fam);

struct CInvarianceReport {
  FamilyId id;
  std::vector<Rational> cs;
  // Per c, per a in {-1, 0, 1}: sorted (boundary, type, index) triples.
  std::vector<std::vector<std::vector<ExpectedZero>>> signatures;
  bool identical = true;
  std::vector<Rational> non_typical;  // c values producing a center

  std::string to_text() const;
};

// id is BDS, SS_sink or SS_source; the latter two are the same family with c
// taken from the list.
CInvarianceReport c_invariance(FamilyId id, std::span<const Rational> cs);

}  // namespace gradflow::nf
