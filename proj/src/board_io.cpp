#include "votegame/board_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace votegame {

void write_board(std::ostream& out, const BulletinBoard& bb) {
  out << "# votegame bulletin board, " << bb.size() << " ballot(s)\n";
  for (const auto& ballot : bb) {
    out << to_hex(encode_ballot(ballot)) << '\n';
  }
}

BulletinBoard read_board(std::istream& in) {
  BulletinBoard bb;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty() || line.front() == '#') {
      continue;
    }
    try {
      bb.insert(decode_ballot(from_hex(line)));
    } catch (const ParseError& e) {
      throw BoardParseError(lineno, e.what());
    }
  }
  return bb;
}

void export_board(const std::filesystem::path& path, const BulletinBoard& bb) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  write_board(out, bb);
  if (!out) {
    throw std::runtime_error("failed writing " + path.string());
  }
}

BulletinBoard import_board(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return read_board(in);
}

}  // namespace votegame
