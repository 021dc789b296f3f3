#pragma once

#include <string>

#include "embed.hpp"
#include "types.hpp"

namespace iris {

// Cosine of the angle between a and b, clamped to [-1, 1]. Throws
// InvalidArgument on a dim mismatch and Validation on a degenerate vector.
double cosine_similarity(const Embedding& a, const Embedding& b);

// One unit-norm vector per class: centroids or single-prompt embeddings.
class ClassRepresentations {
 public:
  // Both vectors must be unit-norm within 1e-6 and share a dim.
  ClassRepresentations(Embedding present, Embedding absent);

  const Embedding& at(ClassLabel c) const { return c == ClassLabel::Present ? present_ : absent_; }
  std::size_t dim() const noexcept { return present_.dim(); }

 private:
  Embedding present_;
  Embedding absent_;
};

struct Prediction {
  std::string sample_id;
  ClassLabel label = ClassLabel::Absent;
  double score_present = 0.0;
  double score_absent = 0.0;
  double margin = 0.0;

  bool operator==(const Prediction&) const = default;
};

// Argmax over the two class scores; an exact tie predicts `absent`.
Prediction classify_one(const Embedding& image_emb, const ClassRepresentations& reps,
                        std::string sample_id);

bool is_unit(const Embedding& e, double tol = 1e-6);

}  // namespace iris
