#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace indep {

/// Bitmask over the atoms of a finite space. Spaces of up to 64 atoms stay
/// in a single inline word; larger spaces spill to the heap.
class AtomMask {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  AtomMask() = default;
  explicit AtomMask(std::size_t nbits);
  static AtomMask full(std::size_t nbits);

  std::size_t size() const noexcept { return nbits_; }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool none() const noexcept;
  bool all() const noexcept;
  std::size_t count() const noexcept;
  /// Lowest set index, or npos.
  std::size_t first() const noexcept;
  bool intersects(const AtomMask& other) const noexcept;
  bool is_subset_of(const AtomMask& other) const noexcept;

  AtomMask& operator&=(const AtomMask& other) noexcept;
  AtomMask& operator|=(const AtomMask& other) noexcept;
  AtomMask& subtract(const AtomMask& other) noexcept;
  AtomMask complement() const;

  friend AtomMask operator&(AtomMask a, const AtomMask& b) noexcept { return a &= b; }
  friend AtomMask operator|(AtomMask a, const AtomMask& b) noexcept { return a |= b; }
  friend AtomMask operator-(AtomMask a, const AtomMask& b) noexcept { return a.subtract(b); }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const AtomMask& other) const noexcept = default;
  std::strong_ordering operator<=>(const AtomMask& other) const noexcept;

 private:
  std::size_t nbits_ = 0;
  boost::container::small_vector<std::uint64_t, 1> words_;
};

class FiniteSpace {
 public:
  explicit FiniteSpace(std::vector<std::string> atom_names);

  std::size_t atom_count() const noexcept { return names_.size(); }
  const std::vector<std::string>& atom_names() const noexcept { return names_; }
  const std::string& name(std::size_t atom) const { return names_.at(atom); }
  /// Throws Error{UnknownLabel}.
  std::size_t index_of(const std::string& label) const;

  bool operator==(const FiniteSpace& other) const noexcept { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

using SpaceRef = std::shared_ptr<const FiniteSpace>;

/// Throws Error{EmptySpace} or Error{DuplicateLabel}.
SpaceRef make_space(std::vector<std::string> atom_names);

bool same_space(const SpaceRef& a, const SpaceRef& b) noexcept;

/// A subset of the atoms of one space.
class EventSet {
 public:
  EventSet() = default;
  EventSet(SpaceRef space, AtomMask mask);

  static EventSet empty(SpaceRef space);
  static EventSet full(SpaceRef space);
  static EventSet from_indices(SpaceRef space, std::span<const std::size_t> atoms);
  static EventSet from_labels(SpaceRef space, std::span<const std::string> labels);
  static EventSet from_labels(SpaceRef space, std::initializer_list<std::string> labels);

  const SpaceRef& space() const noexcept { return space_; }
  const AtomMask& mask() const noexcept { return mask_; }

  bool contains(std::size_t atom) const noexcept { return mask_.test(atom); }
  bool is_empty() const noexcept { return mask_.none(); }
  bool is_full() const noexcept { return mask_.all(); }
  /// Neither empty nor the whole space.
  bool is_nontrivial() const noexcept { return !is_empty() && !is_full(); }
  std::size_t size() const noexcept { return mask_.count(); }
  std::vector<std::size_t> atoms() const;
  std::vector<std::string> labels() const;

  EventSet complement() const;
  bool is_subset_of(const EventSet& other) const;
  bool intersects(const EventSet& other) const;

  friend EventSet operator&(const EventSet& a, const EventSet& b);
  friend EventSet operator|(const EventSet& a, const EventSet& b);
  friend EventSet operator-(const EventSet& a, const EventSet& b);

  /// Equality of members; both operands must live on the same space.
  bool operator==(const EventSet& other) const noexcept { return mask_ == other.mask_; }
  std::strong_ordering operator<=>(const EventSet& other) const noexcept { return mask_ <=> other.mask_; }

  /// "{HH,HT}".
  std::string to_string() const;

 private:
  SpaceRef space_;
  AtomMask mask_;
};

/// A finite sub-sigma-algebra, stored as its partition into atoms ("blocks").
/// Blocks are kept sorted by least atom index, which makes the
/// representation canonical: two algebras are equal iff their block lists are.
class SigmaAlgebra {
 public:
  /// Validates that the blocks are nonempty, disjoint and cover the space.
  /// Throws Error{InvalidPartition} or Error{SpaceMismatch}.
  static SigmaAlgebra from_partition(SpaceRef space, std::vector<EventSet> blocks);
  static SigmaAlgebra trivial(SpaceRef space);
  static SigmaAlgebra discrete(SpaceRef space);

  const SpaceRef& space() const noexcept { return space_; }
  const std::vector<EventSet>& blocks() const noexcept { return blocks_; }
  const EventSet& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  bool is_nontrivial() const noexcept { return blocks_.size() >= 2; }
  std::size_t block_of(std::size_t atom) const { return block_of_atom_.at(atom); }

  /// Membership by block-wise saturation: every block is inside or outside.
  bool contains(const EventSet& event) const;
  /// Smallest member containing the event (union of the blocks it meets).
  EventSet saturate(const EventSet& event) const;
  /// Indices of the blocks contained in a member event. Throws Error{NotInAlgebra}.
  std::vector<std::size_t> blocks_in(const EventSet& member) const;
  /// Union of the blocks selected by bit i of `selection`.
  EventSet union_of(std::uint64_t selection) const;

  bool operator==(const SigmaAlgebra& other) const noexcept { return blocks_ == other.blocks_; }

 private:
  SigmaAlgebra(SpaceRef space, std::vector<EventSet> blocks);

  SpaceRef space_;
  std::vector<EventSet> blocks_;
  std::vector<std::size_t> block_of_atom_;
};

/// Sigma-algebra generated by a list of events: the common refinement of the
/// splits {G, G^c}. Throws Error{SpaceMismatch}.
SigmaAlgebra generate_sigma_algebra(const SpaceRef& space, std::span<const EventSet> generators);

/// Coarsest common refinement: blocks are the nonempty intersections of one
/// block per input. Throws Error{SpaceMismatch} or Error{EmptyFamily}.
SigmaAlgebra join(std::span<const SigmaAlgebra> algebras);

inline constexpr std::size_t kDefaultMemberLimit = 20;

/// All 2^k unions of the k blocks, in order of the block-selection bitmask.
class MemberRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = EventSet;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = EventSet;

    iterator() = default;
    iterator(const SigmaAlgebra* alg, std::uint64_t at) : alg_(alg), at_(at) {}
    EventSet operator*() const { return alg_->union_of(at_); }
    iterator& operator++() { ++at_; return *this; }
    iterator operator++(int) { auto old = *this; ++at_; return old; }
    bool operator==(const iterator& other) const noexcept { return at_ == other.at_; }

   private:
    const SigmaAlgebra* alg_ = nullptr;
    std::uint64_t at_ = 0;
  };

  explicit MemberRange(SigmaAlgebra alg) : alg_(std::move(alg)) {}
  iterator begin() const { return {&alg_, 0}; }
  iterator end() const { return {&alg_, std::uint64_t{1} << alg_.block_count()}; }
  std::uint64_t size() const noexcept { return std::uint64_t{1} << alg_.block_count(); }

 private:
  SigmaAlgebra alg_;
};

/// Throws Error{TooLarge} when the algebra has more than `limit` blocks.
MemberRange enumerate_members(const SigmaAlgebra& alg, std::size_t limit = kDefaultMemberLimit);

}  // namespace indep
