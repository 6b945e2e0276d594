#include "votegame/dummy_scheme.hpp"

namespace votegame {

DummyScheme::DummyScheme(std::size_t num_candidates) : num_candidates_(num_candidates) {
  if (num_candidates < 2) {
    throw std::invalid_argument("dummy scheme needs at least two candidates");
  }
}

KeyPair DummyScheme::setup(SecurityParameter, Rng&) const {
  return KeyPair{PublicKey{std::string(kTag), {}}, SecretKey{std::string(kTag), {}}};
}

std::optional<Ballot> DummyScheme::vote(const PublicKey& pk, Vote v, SecurityParameter,
                                        Rng& rng) const {
  if (pk.scheme_tag != kTag) {
    throw std::invalid_argument("dummy scheme given a foreign public key");
  }
  if (!v.valid_for(num_candidates_)) {
    return std::nullopt;
  }
  ByteWriter w;
  w.put_uint(v.candidate).put_uint(rng());
  return Ballot{std::string(kTag), std::move(w).bytes()};
}

std::optional<Vote> DummyScheme::read_vote(const Ballot& ballot) const {
  if (ballot.scheme_tag != kTag) {
    return std::nullopt;
  }
  try {
    ByteReader r(ballot.payload);
    Vote v{static_cast<std::size_t>(r.get_uint())};
    r.get_uint();
    r.expect_done();
    if (!v.valid_for(num_candidates_)) {
      return std::nullopt;
    }
    return v;
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

Evidence DummyScheme::partial_tally(const SecretKey& sk, const BulletinBoard& bb,
                                    SecurityParameter) const {
  if (sk.scheme_tag != kTag) {
    throw std::invalid_argument("dummy scheme given a foreign secret key");
  }
  std::vector<std::uint64_t> counts(num_candidates_, 0);
  for (const auto& ballot : bb) {
    if (auto v = read_vote(ballot)) {
      ++counts[v->candidate];
    }
  }
  return Evidence{std::string(kTag), encode_counts(counts)};
}

Outcome DummyScheme::recover(const BulletinBoard& bb, const Evidence& e, const PublicKey&) const {
  return recover_counts(e, kTag, num_candidates_, bb);
}

}  // namespace votegame
