#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fgc {

enum class Base { Integers, Rationals };
enum class RingKind { Integers, Rationals, Polynomial };

/// A polynomial generator with its homotopy degree (always even).
struct Generator {
  std::string name;
  int degree = 0;

  friend bool operator==(const Generator&, const Generator&) = default;
};

class GradedRing;
using RingPtr = std::shared_ptr<const GradedRing>;

/// Coefficient ring: Z, Q, or a graded polynomial ring over one of them.
class GradedRing {
 public:
  static constexpr std::size_t kMaxGenerators = 16;

  static RingPtr integers();
  static RingPtr rationals();
  static RingPtr polynomial(Base base, std::vector<Generator> generators);

  Base base() const noexcept { return base_; }
  RingKind kind() const noexcept;
  bool is_q_algebra() const noexcept { return base_ == Base::Rationals; }

  std::span<const Generator> generators() const noexcept { return generators_; }
  std::size_t rank() const noexcept { return generators_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// e.g. "Q[m1:2,m2:4]" or "Z".
  std::string describe() const;

  friend bool operator==(const GradedRing&, const GradedRing&) = default;

 private:
  GradedRing(Base base, std::vector<Generator> generators);

  Base base_;
  std::vector<Generator> generators_;
};

/// Throws RingMismatch unless both rings are equal.
void require_same_ring(const RingPtr& a, const RingPtr& b);

bool is_identifier(std::string_view s);

/// Smallest ring containing both: base Q if either is, generators merged by name.
RingPtr ring_union(const RingPtr& a, const RingPtr& b);
/// True when every generator of `from` occurs in `to` with the same degree and
/// the base of `to` contains that of `from`.
bool embeds_into(const GradedRing& from, const GradedRing& to);

}  // namespace fgc
