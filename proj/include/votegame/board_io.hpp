#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "votegame/election.hpp"

namespace votegame {

class BoardParseError : public std::runtime_error {
 public:
  BoardParseError(std::size_t line, const std::string& what)
      : std::runtime_error("board line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Text format: one hex-encoded canonical ballot per line. Blank lines and
// lines starting with '#' are ignored. Duplicate lines collapse, since a
// board is a set.
void write_board(std::ostream& out, const BulletinBoard& bb);
BulletinBoard read_board(std::istream& in);

void export_board(const std::filesystem::path& path, const BulletinBoard& bb);
BulletinBoard import_board(const std::filesystem::path& path);

}  // namespace votegame
