#pragma once

#include <cstddef>
#include <string>

namespace flatlat {

/// Upper bounds on the work any single operation is allowed to do.
///
/// `max_size` bounds user-supplied semilattices. Derived structures (tensor
/// products, ideal lattices) are bounded by `max_tensor_elements`, and the
/// triple scans of M3[L] / N5[L] by `max_box_triples`.
struct SizeGuard {
  std::size_t max_size = 64;
  std::size_t max_tensor_elements = 4096;
  std::size_t max_box_triples = std::size_t{1} << 18;
  std::size_t max_catalog_size = 8;
  std::size_t max_verify_size = 7;
  std::size_t max_canonical_size = 10;

  /// Defaults, with `max_size` taken from FLATLAT_SIZE_GUARD when set.
  static SizeGuard from_environment();
};

/// Throws Error(SizeGuardExceeded) when `value > limit`.
void check_guard(std::size_t value, std::size_t limit, const std::string& what);

}  // namespace flatlat
