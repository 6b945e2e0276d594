#include "votegame/helios.hpp"

#include <array>

namespace votegame {

namespace {

constexpr std::string_view kKeyTag = "helios";
constexpr std::array<std::uint64_t, 2> kBit{0, 1};
constexpr std::array<std::uint64_t, 1> kExactlyOne{1};

void write_public(ByteWriter& w, const HeliosPublicKey& pk) {
  write_group(w, pk.elgamal.params);
  w.put_int(pk.elgamal.h).put_string(pk.election_id);
}

Bytes proof_context(const HeliosPublicKey& pk, std::string_view statement, std::size_t index) {
  ByteWriter w;
  w.put_string("votegame/helios-proof");
  write_public(w, pk);
  w.put_string(statement).put_uint(index);
  return std::move(w).bytes();
}

Ciphertext product(const std::vector<Ciphertext>& cs, const mpz_class& p) {
  Ciphertext acc{1, 1};
  for (const auto& c : cs) {
    acc = add_ciphertexts(acc, c, p);
  }
  return acc;
}

}  // namespace

PublicKey encode_public_key(const HeliosPublicKey& pk) {
  ByteWriter w;
  write_public(w, pk);
  return PublicKey{std::string(kKeyTag), std::move(w).bytes()};
}

HeliosPublicKey decode_public_key(const PublicKey& pk) {
  if (pk.scheme_tag != kKeyTag) {
    throw std::invalid_argument("not a helios public key: tag '" + pk.scheme_tag + "'");
  }
  ByteReader r(pk.payload);
  HeliosPublicKey out;
  out.elgamal.params = read_group(r);
  out.elgamal.h = r.get_int();
  out.election_id = r.get_string();
  r.expect_done();
  return out;
}

SecretKey encode_secret_key(const HeliosSecretKey& sk) {
  ByteWriter w;
  write_group(w, sk.elgamal.params);
  w.put_int(sk.elgamal.x).put_string(sk.election_id);
  return SecretKey{std::string(kKeyTag), std::move(w).bytes()};
}

HeliosSecretKey decode_secret_key(const SecretKey& sk) {
  if (sk.scheme_tag != kKeyTag) {
    throw std::invalid_argument("not a helios secret key: tag '" + sk.scheme_tag + "'");
  }
  ByteReader r(sk.payload);
  GroupParams gp = read_group(r);
  mpz_class x = r.get_int();
  HeliosSecretKey out{keypair_from_secret(gp, std::move(x)), r.get_string()};
  r.expect_done();
  return out;
}

Ballot encode_helios_ballot(const HeliosBallot& ballot) {
  ByteWriter w;
  w.put_uint(ballot.ciphertexts.size());
  for (const auto& c : ballot.ciphertexts) {
    write_ciphertext(w, c);
  }
  w.put_uint(ballot.individual_proofs.size());
  for (const auto& p : ballot.individual_proofs) {
    write_proof(w, p);
  }
  write_proof(w, ballot.overall_proof);
  return Ballot{std::string(kHeliosBallotTag), std::move(w).bytes()};
}

HeliosBallot decode_helios_ballot(const Ballot& ballot) {
  if (ballot.scheme_tag != kHeliosBallotTag) {
    throw ParseError("not a helios ballot: tag '" + ballot.scheme_tag + "'");
  }
  ByteReader r(ballot.payload);
  HeliosBallot out;
  const auto m = r.get_uint();
  if (m > ballot.payload.size()) {
    throw ParseError("ciphertext count exceeds payload size");
  }
  for (std::uint64_t i = 0; i < m; ++i) {
    out.ciphertexts.push_back(read_ciphertext(r));
  }
  const auto n = r.get_uint();
  if (n > ballot.payload.size()) {
    throw ParseError("proof count exceeds payload size");
  }
  for (std::uint64_t i = 0; i < n; ++i) {
    out.individual_proofs.push_back(read_proof(r));
  }
  out.overall_proof = read_proof(r);
  r.expect_done();
  return out;
}

Bytes individual_proof_context(const HeliosPublicKey& pk, std::size_t candidate) {
  return proof_context(pk, "individual", candidate);
}

Bytes overall_proof_context(const HeliosPublicKey& pk) {
  return proof_context(pk, "overall", 0);
}

bool verify_helios_ballot(const HeliosPublicKey& pk, const HeliosBallot& ballot,
                          Verification mode) {
  const auto m = ballot.ciphertexts.size();
  if (m == 0 || ballot.individual_proofs.size() != m) {
    return false;
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (!verify_membership(pk.elgamal, ballot.ciphertexts[j], ballot.individual_proofs[j], kBit,
                           individual_proof_context(pk, j), mode)) {
      return false;
    }
  }
  return verify_membership(pk.elgamal, product(ballot.ciphertexts, pk.elgamal.params.p),
                           ballot.overall_proof, kExactlyOne, overall_proof_context(pk), mode);
}

bool verify_helios_ballot(const HeliosPublicKey& pk, const Ballot& ballot, Verification mode) {
  try {
    return verify_helios_ballot(pk, decode_helios_ballot(ballot), mode);
  } catch (const ParseError&) {
    return false;
  }
}

std::optional<std::vector<std::uint64_t>> decrypt_helios_ballot(const HeliosSecretKey& sk,
                                                                const HeliosBallot& ballot) {
  std::vector<std::uint64_t> out;
  for (const auto& c : ballot.ciphertexts) {
    auto v = decrypt_exponent(sk.elgamal, c, 1);
    if (!v) return std::nullopt;
    out.push_back(*v);
  }
  return out;
}

HeliosBallot maul_ballot(const HeliosPublicKey& pk, const HeliosBallot& ballot, MaulChoice choice) {
  if (!verify_helios_ballot(pk, ballot, Verification::lenient)) {
    throw std::invalid_argument("maul_ballot: input ballot does not verify");
  }
  if (choice.candidate >= ballot.individual_proofs.size() ||
      choice.branch >= ballot.individual_proofs[choice.candidate].branches.size()) {
    throw std::invalid_argument("maul_ballot: choice outside the ballot's proofs");
  }
  HeliosBallot out = ballot;
  out.individual_proofs[choice.candidate].branches[choice.branch].response +=
      pk.elgamal.params.q;
  return out;
}

Ballot maul_ballot(const HeliosPublicKey& pk, const Ballot& ballot, MaulChoice choice) {
  HeliosBallot decoded;
  try {
    decoded = decode_helios_ballot(ballot);
  } catch (const ParseError& e) {
    throw std::invalid_argument(std::string("maul_ballot: ") + e.what());
  }
  return encode_helios_ballot(maul_ballot(pk, decoded, choice));
}

HeliosScheme::HeliosScheme(std::size_t num_candidates, Verification mode, std::string election_id)
    : num_candidates_(num_candidates), mode_(mode), election_id_(std::move(election_id)) {
  if (num_candidates < 2) {
    throw std::invalid_argument("helios scheme needs at least two candidates");
  }
}

std::string_view HeliosScheme::name() const {
  return mode_ == Verification::lenient ? "helios" : "helios-hardened";
}

KeyPair HeliosScheme::setup(SecurityParameter k, Rng& rng) const {
  HeliosSecretKey sk{gen_keypair(gen_group(k, rng), rng), election_id_};
  return KeyPair{encode_public_key(sk.public_key()), encode_secret_key(sk)};
}

HeliosBallot HeliosScheme::make_ballot(const HeliosPublicKey& pk, Vote v, Rng& rng) const {
  if (!v.valid_for(num_candidates_)) {
    throw std::invalid_argument("vote outside candidate range");
  }
  const auto& gp = pk.elgamal.params;
  HeliosBallot ballot;
  mpz_class r_sum = 0;
  for (std::size_t j = 0; j < num_candidates_; ++j) {
    const std::uint64_t bit = (j == v.candidate) ? 1 : 0;
    const RandomCoin r = random_coin(gp, rng);
    ballot.ciphertexts.push_back(encrypt(pk.elgamal, bit, r));
    ballot.individual_proofs.push_back(prove_membership(
        pk.elgamal, ballot.ciphertexts.back(), kBit, bit, r, individual_proof_context(pk, j), rng));
    r_sum += r.value;
  }
  mpz_mod(r_sum.get_mpz_t(), r_sum.get_mpz_t(), gp.q.get_mpz_t());
  ballot.overall_proof =
      prove_membership(pk.elgamal, product(ballot.ciphertexts, gp.p), kExactlyOne, 0,
                       RandomCoin{r_sum}, overall_proof_context(pk), rng);
  return ballot;
}

std::optional<Ballot> HeliosScheme::vote(const PublicKey& pk, Vote v, SecurityParameter,
                                         Rng& rng) const {
  const auto key = decode_public_key(pk);
  if (!v.valid_for(num_candidates_)) {
    return std::nullopt;
  }
  return encode_helios_ballot(make_ballot(key, v, rng));
}

std::optional<HeliosBallot> HeliosScheme::validated(const HeliosPublicKey& pk,
                                                     const Ballot& ballot) const {
  try {
    auto decoded = decode_helios_ballot(ballot);
    if (decoded.ciphertexts.size() == num_candidates_ &&
        verify_helios_ballot(pk, decoded, mode_)) {
      return decoded;
    }
  } catch (const ParseError&) {
  }
  return std::nullopt;
}

bool HeliosScheme::accepts(const HeliosPublicKey& pk, const Ballot& ballot) const {
  return validated(pk, ballot).has_value();
}

Evidence HeliosScheme::partial_tally(const SecretKey& sk, const BulletinBoard& bb,
                                     SecurityParameter) const {
  const auto key = decode_secret_key(sk);
  const auto pk = key.public_key();
  const auto& p = key.elgamal.params.p;

  std::vector<Ciphertext> aggregate(num_candidates_, Ciphertext{1, 1});
  std::uint64_t valid = 0;
  for (const auto& ballot : bb) {
    const auto decoded = validated(pk, ballot);
    if (!decoded) continue;
    for (std::size_t j = 0; j < num_candidates_; ++j) {
      aggregate[j] = add_ciphertexts(aggregate[j], decoded->ciphertexts[j], p);
    }
    ++valid;
  }

  std::vector<std::uint64_t> counts;
  counts.reserve(num_candidates_);
  for (const auto& c : aggregate) {
    auto v = decrypt_exponent(key.elgamal, c, valid);
    if (!v) {
      // Only reachable if a proof was forged despite verifying.
      throw std::logic_error("aggregate ciphertext decrypts outside [0, valid ballots]");
    }
    counts.push_back(*v);
  }
  return Evidence{std::string(kHeliosBallotTag), encode_counts(counts)};
}

Outcome HeliosScheme::recover(const BulletinBoard& bb, const Evidence& e, const PublicKey&) const {
  return recover_counts(e, kHeliosBallotTag, num_candidates_, bb);
}

}  // namespace votegame
