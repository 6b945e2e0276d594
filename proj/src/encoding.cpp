#include "votegame/encoding.hpp"

#include <limits>

namespace votegame {

void ByteWriter::put_length(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("field exceeds 4-byte length prefix");
  }
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>((n >> shift) & 0xff));
  }
}

ByteWriter& ByteWriter::put_bytes(std::span<const std::uint8_t> data) {
  put_length(data.size());
  out_.insert(out_.end(), data.begin(), data.end());
  return *this;
}

ByteWriter& ByteWriter::put_string(std::string_view s) {
  put_length(s.size());
  out_.insert(out_.end(), s.begin(), s.end());
  return *this;
}

ByteWriter& ByteWriter::put_int(const mpz_class& value) {
  return put_bytes(int_to_bytes(value));
}

ByteWriter& ByteWriter::put_uint(std::uint64_t value) {
  Bytes be;
  while (value != 0) {
    be.insert(be.begin(), static_cast<std::uint8_t>(value & 0xff));
    value >>= 8;
  }
  return put_bytes(be);
}

std::span<const std::uint8_t> ByteReader::take_field() {
  if (data_.size() - pos_ < 4) {
    throw ParseError("truncated length prefix at offset " + std::to_string(pos_));
  }
  std::size_t n = 0;
  for (int i = 0; i < 4; ++i) {
    n = (n << 8) | data_[pos_ + i];
  }
  pos_ += 4;
  if (data_.size() - pos_ < n) {
    throw ParseError("field of length " + std::to_string(n) + " overruns input at offset " +
                     std::to_string(pos_));
  }
  auto field = data_.subspan(pos_, n);
  pos_ += n;
  return field;
}

Bytes ByteReader::get_bytes() {
  auto f = take_field();
  return Bytes(f.begin(), f.end());
}

std::string ByteReader::get_string() {
  auto f = take_field();
  return std::string(f.begin(), f.end());
}

mpz_class ByteReader::get_int() {
  auto f = take_field();
  if (!f.empty() && f.front() == 0) {
    throw ParseError("non-minimal integer encoding");
  }
  return bytes_to_int(f);
}

std::uint64_t ByteReader::get_uint() {
  auto f = take_field();
  if (!f.empty() && f.front() == 0) {
    throw ParseError("non-minimal integer encoding");
  }
  if (f.size() > 8) {
    throw ParseError("integer does not fit in 64 bits");
  }
  std::uint64_t v = 0;
  for (auto byte : f) {
    v = (v << 8) | byte;
  }
  return v;
}

void ByteReader::expect_done() const {
  if (!done()) {
    throw ParseError(std::to_string(data_.size() - pos_) + " trailing bytes");
  }
}

Bytes int_to_bytes(const mpz_class& value) {
  if (sgn(value) < 0) {
    throw std::invalid_argument("canonical encoding is defined for non-negative integers only");
  }
  if (value == 0) {
    return {};
  }
  Bytes out((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
  out.resize(written);
  return out;
}

mpz_class bytes_to_int(std::span<const std::uint8_t> data) {
  mpz_class v;
  if (!data.empty()) {
    mpz_import(v.get_mpz_t(), data.size(), 1, 1, 1, 0, data.data());
  }
  return v;
}

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto byte : data) {
    out.push_back(kDigits[byte >> 4]);
    out.push_back(kDigits[byte & 0x0f]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) {
    throw ParseError("odd number of hex digits");
  }
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_value(hex[i]);
    int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) {
      throw ParseError("invalid hex digit at position " + std::to_string(hi < 0 ? i : i + 1));
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

}  // namespace votegame
