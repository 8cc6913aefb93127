#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "unlat/lattice.hpp"

namespace unlat {

/// Finite, 1-indexed sequence of elements sharing one tag. Terms are
/// produced on demand by a deterministic generator.
class VectorSequence {
 public:
  using Generator = std::function<Element(std::size_t)>;

  VectorSequence(SpaceTag tag, std::size_t length, Generator gen, std::string name = "sequence");

  /// Throws InvalidArgument on an empty list, TagMismatch on mixed tags.
  static VectorSequence from_terms(std::vector<Element> terms, std::string name = "inline");

  const SpaceTag& tag() const noexcept { return tag_; }
  std::size_t length() const noexcept { return length_; }
  const std::string& name() const noexcept { return name_; }

  /// Term n (1-based). Throws InvalidArgument out of range and TagMismatch
  /// if the generator produced an element with a foreign tag.
  Element at(std::size_t n) const;

  /// Materialises all terms.
  std::vector<Element> terms() const;

  /// (x_{indices[0]}, x_{indices[1]}, ...), indices 1-based.
  VectorSequence subsequence(std::vector<std::size_t> indices) const;

  /// (|x_n|).
  VectorSequence modulus() const;

 private:
  SpaceTag tag_;
  std::size_t length_;
  Generator gen_;
  std::string name_;
};

}  // namespace unlat
