#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "votegame/encoding.hpp"
#include "votegame/rng.hpp"

namespace votegame {

class UnsupportedParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class MalformedEvidence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bit length of the prime modulus for group-based schemes.
class SecurityParameter {
 public:
  static constexpr unsigned kMin = 16;
  static constexpr unsigned kMax = 2048;

  explicit SecurityParameter(unsigned bits);

  unsigned bits() const { return bits_; }
  auto operator<=>(const SecurityParameter&) const = default;

 private:
  unsigned bits_;
};

// Ordered, duplicate-free list of candidate identifiers. A vote refers to a
// candidate by its position in this list.
class CandidateSet {
 public:
  explicit CandidateSet(std::vector<std::string> names);
  static CandidateSet numbered(std::size_t m);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

struct Vote {
  std::size_t candidate = 0;

  bool valid_for(std::size_t num_candidates) const { return candidate < num_candidates; }
  auto operator<=>(const Vote&) const = default;
};

// Ballots compare by (scheme_tag, payload), i.e. by their canonical bytes.
struct Ballot {
  std::string scheme_tag;
  Bytes payload;

  auto operator<=>(const Ballot&) const = default;
};

Bytes encode_ballot(const Ballot& ballot);
Ballot decode_ballot(std::span<const std::uint8_t> bytes);

class BulletinBoard {
 public:
  BulletinBoard() = default;
  BulletinBoard(std::initializer_list<Ballot> ballots);

  /// Returns false if a byte-equal ballot is already present.
  bool insert(Ballot ballot);
  bool contains(const Ballot& ballot) const { return ballots_.contains(ballot); }
  std::size_t size() const { return ballots_.size(); }
  bool empty() const { return ballots_.empty(); }

  auto begin() const { return ballots_.begin(); }
  auto end() const { return ballots_.end(); }

  bool operator==(const BulletinBoard&) const = default;

 private:
  std::set<Ballot> ballots_;
};

struct Evidence {
  std::string scheme_tag;
  Bytes payload;

  bool operator==(const Evidence&) const = default;
};

struct Outcome {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  bool operator==(const Outcome&) const = default;
};

struct PublicKey {
  std::string scheme_tag;
  Bytes payload;

  bool operator==(const PublicKey&) const = default;
};

struct SecretKey {
  std::string scheme_tag;
  Bytes payload;

  bool operator==(const SecretKey&) const = default;
};

struct KeyPair {
  PublicKey public_key;
  SecretKey secret_key;

  bool operator==(const KeyPair&) const = default;
};

// Per-candidate count vector, the evidence payload used by the bundled
// schemes: the candidate count followed by one integer field per candidate.
Bytes encode_counts(std::span<const std::uint64_t> counts);
std::vector<std::uint64_t> decode_counts(std::span<const std::uint8_t> bytes);

// Shared Recover step for count-vector evidence. Checks the tag, the arity
// and that the counts do not exceed the number of ballots on the board.
Outcome recover_counts(const Evidence& e, std::string_view expected_tag,
                       std::size_t num_candidates, const BulletinBoard& bb);

// (Setup, Vote, Partial-Tally, Recover). Implementations are stateless
// beyond their configuration, so one instance may serve concurrent callers
// that each bring their own Rng.
class ElectionScheme {
 public:
  virtual ~ElectionScheme() = default;

  virtual std::string_view name() const = 0;
  virtual std::string_view ballot_tag() const = 0;
  virtual std::size_t num_candidates() const = 0;

  virtual KeyPair setup(SecurityParameter k, Rng& rng) const = 0;

  /// std::nullopt is the error ballot, returned iff the vote is out of range.
  virtual std::optional<Ballot> vote(const PublicKey& pk, Vote v, SecurityParameter k,
                                     Rng& rng) const = 0;

  /// Ballots that fail the scheme's validity check are ignored.
  virtual Evidence partial_tally(const SecretKey& sk, const BulletinBoard& bb,
                                 SecurityParameter k) const = 0;

  /// Throws MalformedEvidence if `e` does not decode under this scheme.
  virtual Outcome recover(const BulletinBoard& bb, const Evidence& e,
                          const PublicKey& pk) const = 0;
};

}  // namespace votegame
