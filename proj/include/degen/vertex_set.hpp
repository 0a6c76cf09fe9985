#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace degen {

using Vertex = std::uint32_t;

/// A subset of {0, ..., universe-1} stored as a bitset.
///
/// Sets over at most 64 vertices live entirely inline. All binary operations
/// require both operands to share the same universe.
class VertexSet {
 public:
  using Word = std::uint64_t;
  static constexpr std::size_t kWordBits = 64;

  class Iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;
    using pointer = const Vertex*;
    using reference = Vertex;

    Iterator() = default;
    Iterator(const VertexSet* owner, std::size_t word_index);

    Vertex operator*() const { return current_; }
    Iterator& operator++();
    Iterator operator++(int) {
      Iterator copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const Iterator& other) const {
      return word_index_ == other.word_index_ && remaining_ == other.remaining_;
    }

   private:
    void settle();

    const VertexSet* owner_ = nullptr;
    std::size_t word_index_ = 0;
    Word remaining_ = 0;
    Vertex current_ = 0;
  };

  VertexSet() = default;
  explicit VertexSet(std::size_t universe);
  VertexSet(std::size_t universe, std::initializer_list<Vertex> members);

  static VertexSet full(std::size_t universe);
  static VertexSet from_members(std::size_t universe, std::span<const Vertex> members);
  /// Bit i of `mask` selects vertex i. Requires universe <= 64.
  static VertexSet from_mask(std::size_t universe, Word mask);

  std::size_t universe() const { return universe_; }
  std::size_t size() const;
  bool empty() const;

  bool contains(Vertex v) const {
    return v < universe_ && ((words_[v / kWordBits] >> (v % kWordBits)) & 1U) != 0;
  }
  void insert(Vertex v) { words_[v / kWordBits] |= Word{1} << (v % kWordBits); }
  void erase(Vertex v) { words_[v / kWordBits] &= ~(Word{1} << (v % kWordBits)); }

  /// |*this ∩ other| without materializing the intersection.
  std::size_t intersection_size(const VertexSet& other) const;
  bool is_subset_of(const VertexSet& other) const;
  bool intersects(const VertexSet& other) const;

  VertexSet& operator&=(const VertexSet& other);
  VertexSet& operator|=(const VertexSet& other);
  /// Set difference.
  VertexSet& operator-=(const VertexSet& other);
  VertexSet complement() const;

  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

  Iterator begin() const { return Iterator(this, 0); }
  Iterator end() const { return Iterator(this, words_.size()); }

  /// Lowest member; requires a nonempty set.
  Vertex front() const;
  std::vector<Vertex> to_vector() const;
  /// Bit mask of the members. Requires universe <= 64.
  Word mask() const { return words_.empty() ? 0 : words_[0]; }
  std::span<const Word> words() const { return {words_.data(), words_.size()}; }

  bool operator==(const VertexSet& other) const;
  /// Lexicographic order of the ascending member sequences, e.g.
  /// {0,1} < {0,1,5} < {0,2} < {1}.
  std::strong_ordering operator<=>(const VertexSet& other) const;

 private:
  void clear_tail();

  std::size_t universe_ = 0;
  boost::container::small_vector<Word, 1> words_;
};

}  // namespace degen
