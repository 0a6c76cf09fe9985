#include "degen/vertex_set.hpp"

#include <cassert>
#include <stdexcept>

namespace degen {

namespace {

std::size_t word_count(std::size_t universe) {
  return (universe + VertexSet::kWordBits - 1) / VertexSet::kWordBits;
}

}  // namespace

VertexSet::Iterator::Iterator(const VertexSet* owner, std::size_t word_index)
    : owner_(owner), word_index_(word_index) {
  if (word_index_ < owner_->words_.size()) {
    remaining_ = owner_->words_[word_index_];
    settle();
  }
}

VertexSet::Iterator& VertexSet::Iterator::operator++() {
  remaining_ &= remaining_ - 1;
  settle();
  return *this;
}

void VertexSet::Iterator::settle() {
  const auto& words = owner_->words_;
  while (remaining_ == 0) {
    ++word_index_;
    if (word_index_ >= words.size()) {
      word_index_ = words.size();
      return;
    }
    remaining_ = words[word_index_];
  }
  current_ = static_cast<Vertex>(word_index_ * kWordBits +
                                 static_cast<std::size_t>(std::countr_zero(remaining_)));
}

VertexSet::VertexSet(std::size_t universe) : universe_(universe), words_(word_count(universe), 0) {}

VertexSet::VertexSet(std::size_t universe, std::initializer_list<Vertex> members)
    : VertexSet(universe) {
  for (Vertex v : members) {
    if (v >= universe) {
      throw std::out_of_range("vertex outside the set universe");
    }
    insert(v);
  }
}

VertexSet VertexSet::full(std::size_t universe) {
  VertexSet set(universe);
  for (auto& w : set.words_) {
    w = ~Word{0};
  }
  set.clear_tail();
  return set;
}

VertexSet VertexSet::from_members(std::size_t universe, std::span<const Vertex> members) {
  VertexSet set(universe);
  for (Vertex v : members) {
    if (v >= universe) {
      throw std::out_of_range("vertex outside the set universe");
    }
    set.insert(v);
  }
  return set;
}

VertexSet VertexSet::from_mask(std::size_t universe, Word mask) {
  assert(universe <= kWordBits);
  VertexSet set(universe);
  if (!set.words_.empty()) {
    set.words_[0] = mask;
    set.clear_tail();
  }
  return set;
}

std::size_t VertexSet::size() const {
  std::size_t total = 0;
  for (Word w : words_) {
    total += static_cast<std::size_t>(std::popcount(w));
  }
  return total;
}

bool VertexSet::empty() const {
  for (Word w : words_) {
    if (w != 0) {
      return false;
    }
  }
  return true;
}

std::size_t VertexSet::intersection_size(const VertexSet& other) const {
  assert(universe_ == other.universe_);
  std::size_t total = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    total += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
  }
  return total;
}

bool VertexSet::is_subset_of(const VertexSet& other) const {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~other.words_[i]) != 0) {
      return false;
    }
  }
  return true;
}

bool VertexSet::intersects(const VertexSet& other) const {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & other.words_[i]) != 0) {
      return true;
    }
  }
  return false;
}

VertexSet& VertexSet::operator&=(const VertexSet& other) {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= other.words_[i];
  }
  return *this;
}

VertexSet& VertexSet::operator|=(const VertexSet& other) {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] |= other.words_[i];
  }
  return *this;
}

VertexSet& VertexSet::operator-=(const VertexSet& other) {
  assert(universe_ == other.universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    words_[i] &= ~other.words_[i];
  }
  return *this;
}

VertexSet VertexSet::complement() const {
  VertexSet result = *this;
  for (auto& w : result.words_) {
    w = ~w;
  }
  result.clear_tail();
  return result;
}

Vertex VertexSet::front() const {
  assert(!empty());
  return *begin();
}

std::vector<Vertex> VertexSet::to_vector() const {
  std::vector<Vertex> out;
  out.reserve(size());
  for (Vertex v : *this) {
    out.push_back(v);
  }
  return out;
}

bool VertexSet::operator==(const VertexSet& other) const {
  return universe_ == other.universe_ && words_ == other.words_;
}

std::strong_ordering VertexSet::operator<=>(const VertexSet& other) const {
  if (universe_ != other.universe_) {
    return universe_ <=> other.universe_;
  }
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const Word diff = words_[i] ^ other.words_[i];
    if (diff == 0) {
      continue;
    }
    const unsigned bit = static_cast<unsigned>(std::countr_zero(diff));
    const bool mine = ((words_[i] >> bit) & 1U) != 0;
    const VertexSet& without = mine ? other : *this;
    // The sequences agree below the first differing vertex x. The set holding
    // x is smaller unless the other set has nothing above x (it is a prefix).
    bool without_has_more = false;
    const Word above = bit + 1 < kWordBits ? (~Word{0} << (bit + 1)) : 0;
    if ((without.words_[i] & above) != 0) {
      without_has_more = true;
    }
    for (std::size_t j = i + 1; j < words_.size() && !without_has_more; ++j) {
      without_has_more = without.words_[j] != 0;
    }
    const bool mine_smaller = mine == without_has_more;
    return mine_smaller ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

void VertexSet::clear_tail() {
  const std::size_t tail = universe_ % kWordBits;
  if (tail != 0 && !words_.empty()) {
    words_.back() &= (Word{1} << tail) - 1;
  }
}

}  // namespace degen
