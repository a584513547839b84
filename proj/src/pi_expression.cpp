#include "symdet/pi_expression.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace symdet {

namespace {

char factor_letter(FactorKind k) {
  switch (k) {
    case FactorKind::Dot2: return 'f';
    case FactorKind::Det2: return 'g';
    case FactorKind::Dot3: return 'F';
    case FactorKind::Det3: return 'G';
  }
  return '?';
}

// Variable-level polynomial: per-point exponent triples -> integer coefficient.
using PointMonomial = std::vector<Exponents>;
using PointPoly = std::map<PointMonomial, std::int64_t>;

PointPoly factor_poly(const PIFactor& f, int point_count) {
  const PointMonomial one(static_cast<std::size_t>(point_count), Exponents{0, 0, 0});
  auto mono = [&](std::initializer_list<std::pair<int, int>> vars) {
    PointMonomial m = one;
    for (auto [point, coord] : vars) ++m[static_cast<std::size_t>(point - 1)][static_cast<std::size_t>(coord)];
    return m;
  };
  PointPoly p;
  const int i = f.points[0], j = f.points[1], k = f.points[2];
  switch (f.kind) {
    case FactorKind::Dot2:
    case FactorKind::Dot3: {
      const int dims = f.kind == FactorKind::Dot2 ? 2 : 3;
      for (int c = 0; c < dims; ++c) p[mono({{i, c}, {j, c}})] += 1;
      break;
    }
    case FactorKind::Det2:
      p[mono({{i, 0}, {j, 1}})] += 1;
      p[mono({{j, 0}, {i, 1}})] -= 1;
      break;
    case FactorKind::Det3: {
      // rows p_i, p_j, p_k; sum over permutations of the columns
      const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {1, 0, 2}, {2, 1, 0}}};
      for (std::size_t s = 0; s < perms.size(); ++s) {
        const auto& c = perms[s];
        p[mono({{i, c[0]}, {j, c[1]}, {k, c[2]}})] += s < 3 ? 1 : -1;
      }
      break;
    }
  }
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
  return p;
}

PointPoly multiply(const PointPoly& a, const PointPoly& b) {
  PointPoly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      PointMonomial m = ma;
      for (std::size_t p = 0; p < m.size(); ++p)
        for (int c = 0; c < 3; ++c) m[p][c] += mb[p][c];
      out[m] += ca * cb;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  PICombination combination() {
    PICombination out;
    skip();
    bool first = true;
    while (pos_ < s_.size()) {
      Rational sign(1);
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? Rational(-1) : Rational(1);
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      Rational coef(1);
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = Rational(integer());
        skip();
        if (peek() == '/') {
          get();
          skip();
          coef /= Rational(integer());
          skip();
        }
        expect('*');
      }
      out.push_back({sign * coef, product()});
      skip();
    }
    if (out.empty()) fail("empty expression");
    return out;
  }

  PIExpression single() {
    skip();
    PIExpression e = product();
    skip();
    if (pos_ != s_.size()) fail("trailing characters");
    return e;
  }

 private:
  PIExpression product() {
    std::vector<PIFactor> factors;
    while (true) {
      skip();
      const PIFactor f = factor();
      skip();
      int power = 1;
      if (peek() == '^') {
        get();
        skip();
        power = static_cast<int>(integer());
        if (power < 1) fail("power must be positive");
      }
      for (int p = 0; p < power; ++p) factors.push_back(f);
      skip();
      if (peek() != '*') break;
      get();
    }
    try {
      return PIExpression(std::move(factors));
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

  PIFactor factor() {
    const char c = get();
    PIFactor f{};
    int arity = 2;
    switch (c) {
      case 'f': f.kind = FactorKind::Dot2; break;
      case 'g': f.kind = FactorKind::Det2; break;
      case 'F': f.kind = FactorKind::Dot3; break;
      case 'G': f.kind = FactorKind::Det3, arity = 3; break;
      default: --pos_, fail("expected one of f, g, F, G");
    }
    skip();
    expect('(');
    for (int a = 0; a < arity; ++a) {
      skip();
      f.points[static_cast<std::size_t>(a)] = static_cast<int>(integer());
      skip();
      if (a + 1 < arity) expect(',');
    }
    skip();
    expect(')');
    return f;
  }

  std::int64_t integer() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(std::string(s_.substr(start, pos_ - start)));
  }

  void expect(char c) {
    skip();
    if (get() != c) {
      --pos_;
      fail(std::string("expected '") + c + "'");
    }
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return pos_ < s_.size() ? s_[pos_++] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("PI expression: " + what + " at column " + std::to_string(pos_ + 1) + " in '" +
                     std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct ExpansionCache {
  std::shared_mutex mutex;
  std::unordered_map<std::string, MomentPolynomial> entries;
};

ExpansionCache& cache() {
  static ExpansionCache c;
  return c;
}

std::string rational_to_string(const Rational& r) {
  return r.denominator() == 1 ? std::to_string(r.numerator())
                              : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace

PIExpression::PIExpression(std::vector<PIFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InputError("PI expression needs at least one factor");
  const bool is3d = factors_.front().kind == FactorKind::Dot3 || factors_.front().kind == FactorKind::Det3;
  dimension_ = is3d ? 3 : 2;
  for (const auto& f : factors_) {
    const bool f3 = f.kind == FactorKind::Dot3 || f.kind == FactorKind::Det3;
    if (f3 != is3d) throw InputError("PI expression mixes 2D and 3D factors");
    for (int a = 0; a < f.arity(); ++a) {
      const int p = f.points[static_cast<std::size_t>(a)];
      if (p < 1) throw InputError("PI point indices are 1-based");
      point_count_ = std::max(point_count_, p);
    }
  }
  std::vector<bool> used(static_cast<std::size_t>(point_count_) + 1, false);
  for (const auto& f : factors_)
    for (int a = 0; a < f.arity(); ++a) used[static_cast<std::size_t>(f.points[static_cast<std::size_t>(a)])] = true;
  for (int p = 1; p <= point_count_; ++p)
    if (!used[static_cast<std::size_t>(p)]) throw InputError("PI point index " + std::to_string(p) + " is unused");
}

int PIExpression::determinant_count() const {
  return static_cast<int>(std::count_if(factors_.begin(), factors_.end(), [](const PIFactor& f) { return f.is_determinant(); }));
}

std::string PIExpression::to_string() const {
  std::string out;
  for (const auto& f : factors_) {
    if (!out.empty()) out += '*';
    out += factor_letter(f.kind);
    out += '(';
    for (int a = 0; a < f.arity(); ++a) {
      if (a) out += ',';
      out += std::to_string(f.points[static_cast<std::size_t>(a)]);
    }
    out += ')';
  }
  return out;
}

PIExpression parse_pi(std::string_view text) { return Parser(text).single(); }

PICombination parse_pi_combination(std::string_view text) { return Parser(text).combination(); }

std::string to_string(const PICombination& combination) {
  std::string out;
  for (const auto& t : combination) {
    const Rational c = t.coefficient;
    if (!out.empty()) out += c < Rational(0) ? " - " : " + ";
    else if (c < Rational(0)) out += "-";
    const Rational a = c < Rational(0) ? -c : c;
    if (a != Rational(1)) out += rational_to_string(a) + "*";
    out += t.expression.to_string();
  }
  return out;
}

void MomentPolynomial::add(const Monomial& monomial, const Rational& coefficient) {
  if (coefficient == Rational(0)) return;
  Monomial key = monomial;
  std::sort(key.begin(), key.end());
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

MomentPolynomial& MomentPolynomial::operator+=(const MomentPolynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

MomentPolynomial MomentPolynomial::operator*(const Rational& s) const {
  MomentPolynomial out(dimension_);
  for (const auto& [m, c] : terms_) out.add(m, c * s);
  return out;
}

int MomentPolynomial::max_moment_order() const {
  int o = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& e : m) o = std::max(o, e[0] + e[1] + e[2]);
  return o;
}

int MomentPolynomial::mass_degree() const {
  return terms_.empty() ? 0 : static_cast<int>(terms_.begin()->first.size());
}

int MomentPolynomial::length_degree() const {
  if (terms_.empty()) return 0;
  int d = 0;
  for (const auto& e : terms_.begin()->first) d += e[0] + e[1] + e[2];
  return d;
}

double MomentPolynomial::evaluate(const MomentTensor& mu) const {
  if (!terms_.empty() && mu.dimension() != dimension_) throw InputError("moment tensor dimension mismatch");
  if (max_moment_order() > mu.max_order())
    throw InputError("moment tensor order " + std::to_string(mu.max_order()) + " is below the required " +
                     std::to_string(max_moment_order()));
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double v = boost::rational_cast<double>(c);
    for (const auto& e : m) v *= mu[e];
    sum += v;
  }
  return sum;
}

std::string MomentPolynomial::to_string() const {
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    os << (c < Rational(0) ? "-" : "+") << rational_to_string(c < Rational(0) ? -c : c);
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      os << " mu(" << m[i][0] << ',' << m[i][1];
      if (dimension_ == 3) os << ',' << m[i][2];
      os << ')';
      if (j - i > 1) os << '^' << (j - i);
      i = j;
    }
    os << '\n';
  }
  return os.str();
}

MomentPolynomial expand_pi(const PIExpression& expression) {
  const std::string key = expression.to_string();
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.entries.find(key); it != c.entries.end()) return it->second;
  }
  const int np = expression.point_count();
  PointPoly poly{{PointMonomial(static_cast<std::size_t>(np), Exponents{0, 0, 0}), 1}};
  for (const auto& f : expression.factors()) poly = multiply(poly, factor_poly(f, np));

  MomentPolynomial out(expression.dimension());
  for (const auto& [m, coef] : poly) {
    for (const auto& e : m)
      if (e[0] + e[1] + e[2] > kMaxMomentOrder)
        throw InputError("PI expression needs moments above order " + std::to_string(kMaxMomentOrder));
    out.add(m, Rational(coef));
  }
  std::unique_lock lock(c.mutex);
  c.entries.emplace(key, out);
  return out;
}

MomentPolynomial expand_pi(const PICombination& combination) {
  if (combination.empty()) throw InputError("empty PI combination");
  MomentPolynomial out(combination.front().expression.dimension());
  for (const auto& t : combination) {
    if (t.expression.dimension() != out.dimension()) throw InputError("PI combination mixes dimensions");
    out += expand_pi(t.expression) * t.coefficient;
  }
  return out;
}

double evaluate_pi(const PIExpression& expression, const MomentTensor& mu) {
  return expand_pi(expression).evaluate(mu);
}

double evaluate_pi(const PICombination& combination, const MomentTensor& mu) {
  return expand_pi(combination).evaluate(mu);
}

double evaluate_pi_on_points(const PIExpression& expression, const Eigen::MatrixXd& points) {
  if (points.rows() != expression.dimension() || points.cols() < expression.point_count())
    throw InputError("point matrix does not fit the PI expression");
  double v = 1.0;
  for (const auto& f : expression.factors()) {
    const auto p = [&](int a) { return points.col(f.points[static_cast<std::size_t>(a)] - 1); };
    switch (f.kind) {
      case FactorKind::Dot2:
      case FactorKind::Dot3: v *= p(0).dot(p(1)); break;
      case FactorKind::Det2: v *= p(0)(0) * p(1)(1) - p(1)(0) * p(0)(1); break;
      case FactorKind::Det3: {
        Eigen::Matrix3d m;
        m << p(0).transpose(), p(1).transpose(), p(2).transpose();
        v *= m.determinant();
        break;
      }
    }
  }
  return v;
}

InvariantClass classify_pi(const PIExpression& expression) {
  return expression.determinant_count() % 2 == 1 ? InvariantClass::Reflection : InvariantClass::Isometric;
}

InvariantClass classify_pi(const PICombination& combination) {
  if (combination.empty()) throw InputError("empty PI combination");
  const InvariantClass first = classify_pi(combination.front().expression);
  for (const auto& t : combination)
    if (classify_pi(t.expression) != first) throw InputError("PI combination mixes isometric and reflection terms");
  return first;
}

}  // namespace symdet
