#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>

namespace symdet {

/// Sum of coefficient * prod_j sin(t_j)^s_j cos(t_j)^c_j over NAngles angles.
/// Exponents are stored per angle as (sin power, cos power).
template <int NAngles>
class TrigForm {
 public:
  using Powers = std::array<int, 2 * NAngles>;
  using Angles = std::array<double, NAngles>;

  void add(const Powers& powers, double coefficient) {
    if (coefficient == 0.0) return;
    auto [it, inserted] = terms_.try_emplace(powers, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  const std::map<Powers, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  int max_power() const {
    int p = 0;
    for (const auto& [pw, c] : terms_) p = std::max(p, *std::max_element(pw.begin(), pw.end()));
    return p;
  }

  double operator()(const Angles& t) const {
    const int n = max_power();
    std::array<std::array<double, 32>, 2 * NAngles> pw{};
    for (int j = 0; j < NAngles; ++j) {
      const double s = std::sin(t[j]), c = std::cos(t[j]);
      pw[2 * j][0] = pw[2 * j + 1][0] = 1.0;
      for (int e = 1; e <= n; ++e) {
        pw[2 * j][e] = pw[2 * j][e - 1] * s;
        pw[2 * j + 1][e] = pw[2 * j + 1][e - 1] * c;
      }
    }
    double sum = 0.0;
    for (const auto& [p, coef] : terms_) {
      double v = coef;
      for (int i = 0; i < 2 * NAngles; ++i) v *= pw[i][p[i]];
      sum += v;
    }
    return sum;
  }

  /// d/dt_j, term by term: d(s^a c^b) = a s^(a-1) c^(b+1) - b s^(a+1) c^(b-1).
  TrigForm derivative(int angle) const {
    TrigForm out;
    const int si = 2 * angle, ci = 2 * angle + 1;
    for (const auto& [p, coef] : terms_) {
      if (p[si] > 0) {
        Powers q = p;
        --q[si];
        ++q[ci];
        out.add(q, coef * p[si]);
      }
      if (p[ci] > 0) {
        Powers q = p;
        ++q[si];
        --q[ci];
        out.add(q, -coef * p[ci]);
      }
    }
    return out;
  }

  TrigForm& operator+=(const TrigForm& other) {
    for (const auto& [p, c] : other.terms_) add(p, c);
    return *this;
  }

  /// Human-readable form, e.g. `+0.0833 cos(t)^2 +0.0833 sin(t)^2`.
  std::string to_string(const std::array<const char*, NAngles>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    char buf[64];
    for (const auto& [p, coef] : terms_) {
      if (!out.empty()) out += ' ';
      std::snprintf(buf, sizeof buf, "%+.17g", coef);
      out += buf;
      for (int j = 0; j < NAngles; ++j) {
        for (int f = 0; f < 2; ++f) {
          const int e = p[2 * j + f];
          if (e == 0) continue;
          out += f == 0 ? " sin(" : " cos(";
          out += names[j];
          out += ')';
          if (e > 1) out += '^' + std::to_string(e);
        }
      }
    }
    return out;
  }

  friend bool operator==(const TrigForm&, const TrigForm&) = default;

 private:
  std::map<Powers, double> terms_;
};

using TrigForm1 = TrigForm<1>;
using TrigForm2 = TrigForm<2>;

}  // namespace symdet
