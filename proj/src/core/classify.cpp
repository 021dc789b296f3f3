#include "classify.hpp"

#include <algorithm>
#include <cmath>

namespace iris {

bool is_unit(const Embedding& e, double tol) { return std::abs(e.norm() - 1.0) <= tol; }

double cosine_similarity(const Embedding& a, const Embedding& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::InvalidArgument, "dim mismatch: " + std::to_string(a.dim()) + " vs " +
                                                std::to_string(b.dim()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  na = std::sqrt(na);
  nb = std::sqrt(nb);
  if (!(na > kDegenerateNorm) || !(nb > kDegenerateNorm)) {
    throw Error(ErrorKind::Validation, "degenerate embedding");
  }
  // Denominator is a product of two norms so swapping a and b gives the
  // bit-identical result.
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

ClassRepresentations::ClassRepresentations(Embedding present, Embedding absent)
    : present_(std::move(present)), absent_(std::move(absent)) {
  if (present_.dim() != absent_.dim() || present_.dim() == 0) {
    throw Error(ErrorKind::InvalidArgument, "class representations must share a non-zero dim");
  }
  if (!is_unit(present_) || !is_unit(absent_)) {
    throw Error(ErrorKind::InvalidArgument, "class representations must be unit-norm");
  }
}

Prediction classify_one(const Embedding& image_emb, const ClassRepresentations& reps,
                        std::string sample_id) {
  Prediction p;
  p.sample_id = std::move(sample_id);
  p.score_present = cosine_similarity(image_emb, reps.at(ClassLabel::Present));
  p.score_absent = cosine_similarity(image_emb, reps.at(ClassLabel::Absent));
  p.label = p.score_present > p.score_absent ? ClassLabel::Present : ClassLabel::Absent;
  p.margin = std::abs(p.score_present - p.score_absent);
  return p;
}

}  // namespace iris
