#include "kg/sexpr.hpp"

#include "kg/error.hpp"

namespace kg {

namespace {

class Reader {
public:
  explicit Reader(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_ws();
    return pos_ >= text_.size();
  }

  Sexpr read() {
    skip_ws();
    if (pos_ >= text_.size()) fail("s-expression: unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Sexpr list;
      while (true) {
        skip_ws();
        if (pos_ >= text_.size()) fail("s-expression: missing ')'");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(read());
      }
    }
    if (c == ')') fail("s-expression: unexpected ')'");
    Sexpr atom;
    atom.kind = Sexpr::Kind::Atom;
    if (c == '"') {
      atom.quoted = true;
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("s-expression: unterminated string");
        char d = text_[pos_++];
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) fail("s-expression: unterminated escape");
          char e = text_[pos_++];
          if (e != '"' && e != '\\')
            fail(std::string("s-expression: unknown escape '\\") + e + "'");
          atom.atom += e;
        } else {
          atom.atom += d;
        }
      }
      return atom;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == '"' || d == ';' || d == ' ' || d == '\t' ||
          d == '\n' || d == '\r')
        break;
      atom.atom += d;
      ++pos_;
    }
    return atom;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void append(std::string& out, const Sexpr& e) {
  if (e.is_atom()) {
    if (e.quoted) {
      out += '"';
      for (char c : e.atom) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    } else {
      out += e.atom;
    }
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    append(out, e.items[i]);
  }
  out += ')';
}

}  // namespace

Sexpr parse_sexpr(std::string_view text) {
  Reader r(text);
  Sexpr e = r.read();
  if (!r.done()) fail("s-expression: trailing content after expression");
  return e;
}

std::vector<Sexpr> parse_sexpr_list(std::string_view text) {
  Reader r(text);
  std::vector<Sexpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

std::string to_string(const Sexpr& e) {
  std::string out;
  append(out, e);
  return out;
}

}  // namespace kg
