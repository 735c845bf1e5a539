#include "indep/space.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "indep/error.hpp"

namespace indep {

// ---------------------------------------------------------------- AtomMask

AtomMask::AtomMask(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

AtomMask AtomMask::full(std::size_t nbits) {
  AtomMask m(nbits);
  for (auto& w : m.words_) w = ~std::uint64_t{0};
  if (const std::size_t tail = nbits & 63; tail != 0) m.words_.back() = (std::uint64_t{1} << tail) - 1;
  return m;
}

bool AtomMask::none() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool AtomMask::all() const noexcept { return *this == full(nbits_); }

std::size_t AtomMask::count() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t AtomMask::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return npos;
}

bool AtomMask::intersects(const AtomMask& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

bool AtomMask::is_subset_of(const AtomMask& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

AtomMask& AtomMask::operator&=(const AtomMask& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

AtomMask& AtomMask::operator|=(const AtomMask& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

AtomMask& AtomMask::subtract(const AtomMask& other) noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
  return *this;
}

AtomMask AtomMask::complement() const { return full(nbits_) - *this; }

std::strong_ordering AtomMask::operator<=>(const AtomMask& other) const noexcept {
  if (auto c = nbits_ <=> other.nbits_; c != 0) return c;
  // Compare as bit strings read from atom 0 upward, so that sets holding a
  // smaller least atom sort first.
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t a = words_[w];
    const std::uint64_t b = other.words_[w];
    if (a == b) continue;
    const std::uint64_t diff = a ^ b;
    const std::uint64_t lowest = diff & (~diff + 1);
    return (a & lowest) != 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

// ------------------------------------------------------------- FiniteSpace

FiniteSpace::FiniteSpace(std::vector<std::string> atom_names) : names_(std::move(atom_names)) {
  if (names_.empty()) throw Error(ErrorCode::EmptySpace, "a space needs at least one atom");
  index_.reserve(names_.size());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw Error(ErrorCode::DuplicateLabel, "atom label \"" + names_[i] + "\" appears twice");
    }
  }
}

std::size_t FiniteSpace::index_of(const std::string& label) const {
  const auto it = index_.find(label);
  if (it == index_.end()) throw Error(ErrorCode::UnknownLabel, "no atom labelled \"" + label + "\"");
  return it->second;
}

SpaceRef make_space(std::vector<std::string> atom_names) {
  return std::make_shared<const FiniteSpace>(std::move(atom_names));
}

bool same_space(const SpaceRef& a, const SpaceRef& b) noexcept {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------- EventSet

namespace {

void require_same(const SpaceRef& a, const SpaceRef& b) {
  if (!same_space(a, b)) throw Error(ErrorCode::SpaceMismatch, "events live on different spaces");
}

}  // namespace

EventSet::EventSet(SpaceRef space, AtomMask mask) : space_(std::move(space)), mask_(std::move(mask)) {
  if (!space_ || mask_.size() != space_->atom_count()) {
    throw Error(ErrorCode::SpaceMismatch, "mask width does not match the space");
  }
}

EventSet EventSet::empty(SpaceRef space) {
  const auto m = space->atom_count();
  return {std::move(space), AtomMask(m)};
}

EventSet EventSet::full(SpaceRef space) {
  const auto m = space->atom_count();
  return {std::move(space), AtomMask::full(m)};
}

EventSet EventSet::from_indices(SpaceRef space, std::span<const std::size_t> atoms) {
  AtomMask mask(space->atom_count());
  for (auto a : atoms) {
    if (a >= space->atom_count()) throw Error(ErrorCode::UnknownLabel, "atom index out of range");
    mask.set(a);
  }
  return {std::move(space), std::move(mask)};
}

EventSet EventSet::from_labels(SpaceRef space, std::span<const std::string> labels) {
  AtomMask mask(space->atom_count());
  for (const auto& l : labels) mask.set(space->index_of(l));
  return {std::move(space), std::move(mask)};
}

EventSet EventSet::from_labels(SpaceRef space, std::initializer_list<std::string> labels) {
  return from_labels(std::move(space), std::span<const std::string>(labels.begin(), labels.size()));
}

std::vector<std::size_t> EventSet::atoms() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  mask_.for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

std::vector<std::string> EventSet::labels() const {
  std::vector<std::string> out;
  mask_.for_each([&](std::size_t i) { out.push_back(space_->name(i)); });
  return out;
}

EventSet EventSet::complement() const { return {space_, mask_.complement()}; }

bool EventSet::is_subset_of(const EventSet& other) const {
  require_same(space_, other.space_);
  return mask_.is_subset_of(other.mask_);
}

bool EventSet::intersects(const EventSet& other) const {
  require_same(space_, other.space_);
  return mask_.intersects(other.mask_);
}

EventSet operator&(const EventSet& a, const EventSet& b) {
  require_same(a.space_, b.space_);
  return {a.space_, a.mask_ & b.mask_};
}

EventSet operator|(const EventSet& a, const EventSet& b) {
  require_same(a.space_, b.space_);
  return {a.space_, a.mask_ | b.mask_};
}

EventSet operator-(const EventSet& a, const EventSet& b) {
  require_same(a.space_, b.space_);
  return {a.space_, a.mask_ - b.mask_};
}

std::string EventSet::to_string() const {
  std::string out = "{";
  bool first = true;
  mask_.for_each([&](std::size_t i) {
    if (!first) out += ',';
    out += space_->name(i);
    first = false;
  });
  out += '}';
  return out;
}

// ------------------------------------------------------------ SigmaAlgebra

SigmaAlgebra::SigmaAlgebra(SpaceRef space, std::vector<EventSet> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)), block_of_atom_(space_->atom_count()) {
  std::sort(blocks_.begin(), blocks_.end(),
            [](const EventSet& a, const EventSet& b) { return a.mask().first() < b.mask().first(); });
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks_[b].mask().for_each([&](std::size_t atom) { block_of_atom_[atom] = b; });
  }
}

SigmaAlgebra SigmaAlgebra::from_partition(SpaceRef space, std::vector<EventSet> blocks) {
  AtomMask seen(space->atom_count());
  for (const auto& b : blocks) {
    require_same(space, b.space());
    if (b.is_empty()) throw Error(ErrorCode::InvalidPartition, "empty block");
    if (b.mask().intersects(seen)) throw Error(ErrorCode::InvalidPartition, "blocks overlap");
    seen |= b.mask();
  }
  if (!seen.all()) throw Error(ErrorCode::InvalidPartition, "blocks do not cover the space");
  return SigmaAlgebra(std::move(space), std::move(blocks));
}

SigmaAlgebra SigmaAlgebra::trivial(SpaceRef space) {
  auto omega = EventSet::full(space);
  return SigmaAlgebra(std::move(space), {std::move(omega)});
}

SigmaAlgebra SigmaAlgebra::discrete(SpaceRef space) {
  std::vector<EventSet> blocks;
  for (std::size_t i = 0; i < space->atom_count(); ++i) {
    AtomMask m(space->atom_count());
    m.set(i);
    blocks.emplace_back(space, std::move(m));
  }
  return SigmaAlgebra(std::move(space), std::move(blocks));
}

bool SigmaAlgebra::contains(const EventSet& event) const {
  require_same(space_, event.space());
  for (const auto& b : blocks_) {
    if (b.mask().intersects(event.mask()) && !b.mask().is_subset_of(event.mask())) return false;
  }
  return true;
}

EventSet SigmaAlgebra::saturate(const EventSet& event) const {
  require_same(space_, event.space());
  AtomMask out(space_->atom_count());
  for (const auto& b : blocks_) {
    if (b.mask().intersects(event.mask())) out |= b.mask();
  }
  return {space_, std::move(out)};
}

std::vector<std::size_t> SigmaAlgebra::blocks_in(const EventSet& member) const {
  if (!contains(member)) throw Error(ErrorCode::NotInAlgebra, member.to_string() + " is not a member");
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (blocks_[b].mask().intersects(member.mask())) out.push_back(b);
  }
  return out;
}

EventSet SigmaAlgebra::union_of(std::uint64_t selection) const {
  AtomMask out(space_->atom_count());
  for (std::size_t b = 0; b < blocks_.size() && b < 64; ++b) {
    if ((selection >> b) & 1u) out |= blocks_[b].mask();
  }
  return {space_, std::move(out)};
}

// ---------------------------------------------------------- constructions

namespace {

// Groups atoms by a per-atom signature; each distinct signature is a block.
template <typename Signature>
SigmaAlgebra partition_by(const SpaceRef& space, Signature&& signature_of) {
  using Key = decltype(signature_of(std::size_t{0}));
  std::map<Key, AtomMask> cells;
  const auto m = space->atom_count();
  for (std::size_t atom = 0; atom < m; ++atom) {
    auto [it, inserted] = cells.try_emplace(signature_of(atom), m);
    it->second.set(atom);
  }
  std::vector<EventSet> blocks;
  blocks.reserve(cells.size());
  for (auto& [key, mask] : cells) blocks.emplace_back(space, std::move(mask));
  return SigmaAlgebra::from_partition(space, std::move(blocks));
}

}  // namespace

SigmaAlgebra generate_sigma_algebra(const SpaceRef& space, std::span<const EventSet> generators) {
  for (const auto& g : generators) require_same(space, g.space());
  return partition_by(space, [&](std::size_t atom) {
    std::vector<bool> sig(generators.size());
    for (std::size_t g = 0; g < generators.size(); ++g) sig[g] = generators[g].contains(atom);
    return sig;
  });
}

SigmaAlgebra join(std::span<const SigmaAlgebra> algebras) {
  if (algebras.empty()) throw Error(ErrorCode::EmptyFamily, "join of an empty list");
  const auto& space = algebras.front().space();
  for (const auto& a : algebras) require_same(space, a.space());
  return partition_by(space, [&](std::size_t atom) {
    std::vector<std::size_t> sig(algebras.size());
    for (std::size_t i = 0; i < algebras.size(); ++i) sig[i] = algebras[i].block_of(atom);
    return sig;
  });
}

MemberRange enumerate_members(const SigmaAlgebra& alg, std::size_t limit) {
  if (alg.block_count() > limit || alg.block_count() >= 64) {
    throw Error(ErrorCode::TooLarge, std::to_string(alg.block_count()) + " blocks exceed the enumeration limit of " +
                                         std::to_string(limit));
  }
  return MemberRange(alg);
}

}  // namespace indep
