#include "unlat/sequence.hpp"

#include <memory>

namespace unlat {

VectorSequence::VectorSequence(SpaceTag tag, std::size_t length, Generator gen, std::string name)
    : tag_(std::move(tag)), length_(length), gen_(std::move(gen)), name_(std::move(name)) {
  if (length_ == 0) throw LatticeError(ErrorCode::InvalidArgument, "sequence length must be >= 1");
  if (!gen_) throw LatticeError(ErrorCode::InvalidArgument, "sequence needs a generator");
}

VectorSequence VectorSequence::from_terms(std::vector<Element> terms, std::string name) {
  if (terms.empty()) throw LatticeError(ErrorCode::InvalidArgument, "empty sequence literal");
  for (const auto& t : terms) require_same_tag(terms.front(), t);
  auto shared = std::make_shared<const std::vector<Element>>(std::move(terms));
  SpaceTag tag = shared->front().tag();
  const std::size_t n = shared->size();
  return VectorSequence(std::move(tag), n, [shared](std::size_t i) { return (*shared)[i - 1]; },
                        std::move(name));
}

Element VectorSequence::at(std::size_t n) const {
  if (n == 0 || n > length_) {
    throw LatticeError(ErrorCode::InvalidArgument,
                       "index " + std::to_string(n) + " outside 1.." + std::to_string(length_));
  }
  Element e = gen_(n);
  if (!(e.tag() == tag_)) {
    throw LatticeError(ErrorCode::TagMismatch, name_ + " produced " + e.tag().name() + ", declared " + tag_.name());
  }
  return e;
}

std::vector<Element> VectorSequence::terms() const {
  std::vector<Element> out;
  out.reserve(length_);
  for (std::size_t n = 1; n <= length_; ++n) out.push_back(at(n));
  return out;
}

VectorSequence VectorSequence::subsequence(std::vector<std::size_t> indices) const {
  if (indices.empty()) throw LatticeError(ErrorCode::InvalidArgument, "empty subsequence");
  for (std::size_t i : indices) {
    if (i == 0 || i > length_) throw LatticeError(ErrorCode::InvalidArgument, "subsequence index out of range");
  }
  auto idx = std::make_shared<const std::vector<std::size_t>>(std::move(indices));
  const std::size_t n = idx->size();
  return VectorSequence(tag_, n, [parent = *this, idx](std::size_t k) { return parent.at((*idx)[k - 1]); },
                        name_ + "[sub]");
}

VectorSequence VectorSequence::modulus() const {
  return VectorSequence(tag_, length_, [parent = *this](std::size_t n) { return abs(parent.at(n)); },
                        "|" + name_ + "|");
}

}  // namespace unlat
