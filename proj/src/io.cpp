#include "ualoc/io.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "ualoc/errors.hpp"

namespace ualoc {

namespace {

struct Token {
  std::string text;
  int line = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '#')
        ++j;
      out.push_back(Token{std::string(text.substr(i, j - i)), line});
      i = j;
    }
  }
  return out;
}

int parse_int(const Token& t, const char* what) {
  int value = 0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw parse_error(t.line, std::string("expected ") + what + ", got '" + t.text + "'");
  return value;
}

}  // namespace

std::vector<FiniteAlgebra> parse_algebras(std::string_view text) {
  const std::vector<Token> toks = tokenize(text);
  std::vector<FiniteAlgebra> out;
  std::size_t i = 0;
  const int last_line = toks.empty() ? 1 : toks.back().line;

  while (i < toks.size()) {
    if (toks[i].text != "algebra")
      throw parse_error(toks[i].line, "expected 'algebra', got '" + toks[i].text + "'");
    if (++i >= toks.size()) throw parse_error(last_line, "missing algebra name");
    FiniteAlgebra a;
    a.name = toks[i].text;
    const int header_line = toks[i].line;
    ++i;

    if (i >= toks.size() || toks[i].text != "size")
      throw parse_error(i < toks.size() ? toks[i].line : header_line, "expected 'size'");
    if (++i >= toks.size()) throw parse_error(last_line, "missing size value");
    a.size = parse_int(toks[i], "a size");
    if (a.size < 1) throw parse_error(toks[i].line, "size must be at least 1");
    ++i;

    bool ended = false;
    while (i < toks.size()) {
      if (toks[i].text == "end") {
        ended = true;
        ++i;
        break;
      }
      if (toks[i].text != "op")
        throw parse_error(toks[i].line, "expected 'op' or 'end', got '" + toks[i].text + "'");
      if (++i >= toks.size()) throw parse_error(last_line, "missing operation symbol");
      OperationTable op;
      op.symbol = toks[i].text;
      const Token sym_tok = toks[i];
      if (a.find_op(op.symbol))
        throw parse_error(sym_tok.line, "duplicate operation symbol '" + op.symbol + "'");
      if (++i >= toks.size()) throw parse_error(last_line, "missing arity");
      op.arity = parse_int(toks[i], "an arity");
      if (op.arity < 0) throw parse_error(toks[i].line, "arity must be non-negative");
      ++i;

      std::size_t expect = 1;
      for (int j = 0; j < op.arity; ++j) expect *= static_cast<std::size_t>(a.size);
      op.table.reserve(expect);
      while (op.table.size() < expect) {
        if (i >= toks.size())
          throw parse_error(last_line, "table for op '" + op.symbol + "' expects " +
                                           std::to_string(expect) + " entries, got " +
                                           std::to_string(op.table.size()));
        const int v = parse_int(toks[i], "a table entry");
        if (v < 0 || v >= a.size)
          throw parse_error(toks[i].line, "table entry " + std::to_string(v) + " of op '" +
                                              op.symbol + "' is outside 0.." +
                                              std::to_string(a.size - 1));
        op.table.push_back(v);
        ++i;
      }
      a.ops.push_back(std::move(op));
    }
    if (!ended) throw parse_error(last_line, "missing 'end' for algebra '" + a.name + "'");
    a.validate();
    out.push_back(std::move(a));
  }
  return out;
}

std::string render_algebra(const FiniteAlgebra& a) {
  std::ostringstream os;
  os << "algebra " << a.name << "\n";
  os << "size " << a.size << "\n";
  for (const auto& op : a.ops) {
    os << "op " << op.symbol << " " << op.arity << "\n";
    // one line per row of the last argument; a 0-ary table is a single value
    const std::size_t row = op.arity == 0 ? 1 : static_cast<std::size_t>(a.size);
    for (std::size_t i = 0; i < op.table.size(); i += row) {
      for (std::size_t j = 0; j < row && i + j < op.table.size(); ++j) {
        if (j) os << ' ';
        os << op.table[i + j];
      }
      os << '\n';
    }
  }
  os << "end\n";
  return os.str();
}

std::string render_algebras(std::span<const FiniteAlgebra> algebras) {
  std::string out;
  for (std::size_t i = 0; i < algebras.size(); ++i) {
    if (i) out += "\n";
    out += render_algebra(algebras[i]);
  }
  return out;
}

}  // namespace ualoc
