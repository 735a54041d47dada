#pragma once

#include <string>
#include <vector>

#include "fgc/fgl/formal_group_law.hpp"

namespace fgc {

/// An exponential characteristic class, given by its characteristic series
/// f(x) = 1 + a_1 x + a_2 x^2 + ... in the single variable "x".
class ExpClass {
 public:
  explicit ExpClass(TruncSeries f);

  const TruncSeries& series() const noexcept { return f_; }
  const RingPtr& ring() const noexcept { return f_.ring(); }
  int trunc() const noexcept { return f_.trunc(); }
  /// True when a_k has degree 2k for every k.
  bool is_homogeneous() const;

 private:
  TruncSeries f_;
};

/// A bundle in the splitting model: either named Chern roots (weight 1) or
/// formal Chern classes c_1..c_n, carried as series variables of weight k.
struct BundleData {
  enum class Kind { Roots, Classes };
  Kind kind = Kind::Roots;
  std::vector<std::string> names;

  int rank() const { return static_cast<int>(names.size()); }

  /// Roots x1..xn (or prefix1..prefixn).
  static BundleData roots(int n, const std::string& prefix = "x");
  static BundleData roots(std::vector<std::string> names);
  /// Chern class symbols c1..cn.
  static BundleData classes(int n, const std::string& prefix = "c");
};

/// Rewrites a symmetric series in the given roots as a series G in the
/// elementary symmetric functions, named out_prefix1..n with weights 1..n.
/// Other variables of p pass through unchanged.
TruncSeries symmetric_expand(const TruncSeries& p, const std::vector<std::string>& roots,
                             const std::string& out_prefix = "s");
/// The elementary symmetric polynomial e_k in the given roots.
TruncSeries elementary_symmetric(const RingPtr& ring, const std::vector<std::string>& roots, int k, int trunc);
/// Substitutes sigma_k -> e_k(roots) back into a series in the weighted symbols.
TruncSeries symmetric_collapse(const TruncSeries& G, const std::vector<std::string>& symbols,
                               const std::vector<std::string>& roots);

/// prod_i f(x_i) over the roots.
TruncSeries class_on_roots(const ExpClass& c, const std::vector<std::string>& roots);
/// c^f(V): a series in the roots or in the class symbols, depending on V.
TruncSeries class_on_bundle(const ExpClass& c, const BundleData& V);

/// g(x)/x for a parameter g with g(0) = 0 and g'(0) = 1.
ExpClass orientation_quotient(const TruncSeries& g);
/// x / exp_F(x), over a Q-algebra.
ExpClass hirzebruch_series(const FormalGroupLaw& F);
/// e(V (x) L) = prod_i (x_i +_F t).
TruncSeries euler_of_twist(const FormalGroupLaw& F, const std::vector<std::string>& roots,
                           const std::string& t = "t");
/// Coefficient of x^n in Q(x)^{n+1}.
RingElement genus_cpn(const ExpClass& Q, int n);

/// x / (1 - e^{-x}) over Q.
ExpClass todd_series(int D);
/// x / tanh(x) over Q.
ExpClass l_series(int D);

}  // namespace fgc
