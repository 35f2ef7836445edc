#pragma once

#include "linf/rational.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace linf {

struct BasisElement {
  std::string label;
  int degree = 0;

  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

// Finite graded vector space with a labelled basis. The basis is kept sorted
// by (degree, label), so each degree occupies a contiguous index range.
class GradedSpace {
 public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<BasisElement> elements);

  size_t dim() const { return basis_.size(); }
  bool empty() const { return basis_.empty(); }
  const BasisElement& operator[](size_t i) const { return basis_[i]; }
  const std::vector<BasisElement>& basis() const { return basis_; }

  int degree(size_t i) const { return basis_[i].degree; }
  // Degree in the suspension g[1].
  int shifted_degree(size_t i) const { return basis_[i].degree - 1; }
  const std::string& label(size_t i) const { return basis_[i].label; }

  std::optional<size_t> index_of(std::string_view label) const;
  std::vector<int> degrees() const;
  std::vector<size_t> indices_in_degree(int degree) const;
  std::map<int, std::vector<std::string>> components() const;

  friend bool operator==(const GradedSpace&, const GradedSpace&) = default;

 private:
  std::vector<BasisElement> basis_;
};

GradedSpace direct_sum(const GradedSpace& a, const GradedSpace& b);

// Homogeneous linear map of fixed degree shift, stored as one matrix over the
// full bases; entries outside the (n, n + shift) blocks are always zero.
struct GradedLinearMap {
  GradedSpace source;
  GradedSpace target;
  int shift = 0;
  QMatrix matrix;  // target.dim() x source.dim()

  GradedLinearMap() = default;
  GradedLinearMap(GradedSpace src, GradedSpace tgt, int shift_);
  GradedLinearMap(GradedSpace src, GradedSpace tgt, int shift_, QMatrix m);

  static GradedLinearMap identity(const GradedSpace& space);

  QMatrix block(int source_degree) const;
  // Throws ShapeMismatch if a nonzero entry violates the shift.
  void validate() const;

  friend bool operator==(const GradedLinearMap& a, const GradedLinearMap& b) {
    return a.source == b.source && a.target == b.target && a.shift == b.shift &&
           a.matrix == b.matrix;
  }
};

GradedLinearMap compose(const GradedLinearMap& outer, const GradedLinearMap& inner);

// Koszul sign of rearranging homogeneous elements x_0..x_{k-1} into the order
// x_{perm[0]}, ..., x_{perm[k-1]}. perm is 0-based.
int koszul_sign(std::span<const int> permutation, std::span<const int> degrees);

// Basis indices on which d∘d does not vanish.
std::vector<size_t> check_complex(const GradedSpace& space, const GradedLinearMap& d);

struct ContractionData {
  GradedSpace ambient;
  GradedLinearMap d;
  GradedSpace cohomology;
  GradedLinearMap p;  // ambient -> cohomology
  GradedLinearMap i;  // cohomology -> ambient
  GradedLinearMap h;  // ambient -> ambient, shift -1
};

// Names of the contraction identities that fail (empty when all hold):
// "d^2", "pi", "dh+hd", "hh", "ph", "hi".
std::vector<std::string> contraction_violations(const ContractionData& c);

ContractionData cohomology_contraction(const GradedSpace& space, const GradedLinearMap& d);

// Betti numbers per degree of a complex.
std::map<int, Eigen::Index> cohomology_ranks(const GradedSpace& space, const GradedLinearMap& d);

}  // namespace linf
