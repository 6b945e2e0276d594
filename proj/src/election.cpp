#include "votegame/election.hpp"

#include <numeric>
#include <unordered_set>

namespace votegame {

SecurityParameter::SecurityParameter(unsigned bits) : bits_(bits) {
  if (bits < kMin || bits > kMax) {
    throw UnsupportedParameter("security parameter k=" + std::to_string(bits) +
                               " outside supported range [" + std::to_string(kMin) + ", " +
                               std::to_string(kMax) + "]");
  }
}

CandidateSet::CandidateSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw std::invalid_argument("a candidate set needs at least two candidates");
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw std::invalid_argument("duplicate candidate identifier '" + n + "'");
    }
  }
}

CandidateSet CandidateSet::numbered(std::size_t m) {
  std::vector<std::string> names;
  names.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    names.push_back("candidate-" + std::to_string(i));
  }
  return CandidateSet(std::move(names));
}

Bytes encode_ballot(const Ballot& ballot) {
  return ByteWriter().put_string(ballot.scheme_tag).put_bytes(ballot.payload).bytes();
}

Ballot decode_ballot(std::span<const std::uint8_t> bytes) {
  ByteReader reader(bytes);
  Ballot b;
  b.scheme_tag = reader.get_string();
  b.payload = reader.get_bytes();
  reader.expect_done();
  return b;
}

BulletinBoard::BulletinBoard(std::initializer_list<Ballot> ballots) {
  for (const auto& b : ballots) {
    insert(b);
  }
}

bool BulletinBoard::insert(Ballot ballot) {
  return ballots_.insert(std::move(ballot)).second;
}

std::uint64_t Outcome::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Bytes encode_counts(std::span<const std::uint64_t> counts) {
  ByteWriter w;
  w.put_uint(counts.size());
  for (auto c : counts) {
    w.put_uint(c);
  }
  return std::move(w).bytes();
}

std::vector<std::uint64_t> decode_counts(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  const auto n = r.get_uint();
  if (n > bytes.size()) {
    throw ParseError("count vector length exceeds input size");
  }
  std::vector<std::uint64_t> counts;
  counts.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    counts.push_back(r.get_uint());
  }
  r.expect_done();
  return counts;
}

Outcome recover_counts(const Evidence& e, std::string_view expected_tag,
                       std::size_t num_candidates, const BulletinBoard& bb) {
  if (e.scheme_tag != expected_tag) {
    throw MalformedEvidence("evidence tag '" + e.scheme_tag + "' does not match scheme '" +
                            std::string(expected_tag) + "'");
  }
  Outcome out;
  try {
    out.counts = decode_counts(e.payload);
  } catch (const ParseError& err) {
    throw MalformedEvidence(std::string("evidence does not decode: ") + err.what());
  }
  if (out.counts.size() != num_candidates) {
    throw MalformedEvidence("evidence has " + std::to_string(out.counts.size()) +
                            " entries, expected " + std::to_string(num_candidates));
  }
  if (out.total() > bb.size()) {
    throw MalformedEvidence("evidence counts more votes than ballots on the board");
  }
  return out;
}

}  // namespace votegame
