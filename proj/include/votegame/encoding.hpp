#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace votegame {

using Bytes = std::vector<std::uint8_t>;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Canonical field encoding shared by ballots, keys, evidence and the
// Fiat-Shamir transcript. Every field is a 4-byte big-endian length followed
// by that many bytes. Integers are non-negative and written big-endian in
// minimal form, so zero is the empty field.
class ByteWriter {
 public:
  ByteWriter& put_bytes(std::span<const std::uint8_t> data);
  ByteWriter& put_string(std::string_view s);
  ByteWriter& put_int(const mpz_class& value);
  ByteWriter& put_uint(std::uint64_t value);

  const Bytes& bytes() const& { return out_; }
  Bytes bytes() && { return std::move(out_); }

 private:
  void put_length(std::size_t n);

  Bytes out_;
};

// Reads fields written by ByteWriter. Rejects truncated input and
// non-minimal integers so that decoding is the exact inverse of encoding.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  Bytes get_bytes();
  std::string get_string();
  mpz_class get_int();
  std::uint64_t get_uint();

  bool done() const { return pos_ == data_.size(); }
  void expect_done() const;

 private:
  std::span<const std::uint8_t> take_field();

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

Bytes int_to_bytes(const mpz_class& value);
mpz_class bytes_to_int(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> data);
Bytes from_hex(std::string_view hex);

}  // namespace votegame
