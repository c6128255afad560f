// Copyright (c) 2026 the floqgap authors. All rights reserved.
// SPDX-License-Identifier: Apache-2.0
#include "floqgap/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "floqgap/errors.hpp"

namespace floqgap {

namespace {

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError("toml: line " + std::to_string(line) + ": " + what);
  }
  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  char take() {
    const char c = text[pos++];
    if (c == '\n') ++line;
    return c;
  }
  // Whitespace and comments; newlines skipped only when requested (inside
  // arrays values may span lines).
  void skip_ws(bool over_newlines) {
    while (!done()) {
      const char c = peek();
      if (c == '#') {
        while (!done() && peek() != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos;
      } else if (c == '\n' && over_newlines) {
        take();
      } else {
        break;
      }
    }
  }
};

std::string parse_bare_or_quoted_key(Cursor& c) {
  c.skip_ws(false);
  std::string key;
  if (!c.done() && (c.peek() == '"' || c.peek() == '\'')) {
    const char quote = c.take();
    while (!c.done() && c.peek() != quote) key.push_back(c.take());
    if (c.done()) c.fail("unterminated quoted key");
    c.take();
    return key;
  }
  while (!c.done() && (std::isalnum(static_cast<unsigned char>(c.peek())) || c.peek() == '_' ||
                       c.peek() == '-')) {
    key.push_back(c.take());
  }
  if (key.empty()) c.fail("expected a key");
  return key;
}

Json parse_value(Cursor& c);

Json parse_array(Cursor& c) {
  c.take();  // '['
  Json arr = Json::array();
  c.skip_ws(true);
  if (!c.done() && c.peek() == ']') {
    c.take();
    return arr;
  }
  while (true) {
    arr.push_back(parse_value(c));
    c.skip_ws(true);
    if (c.done()) c.fail("unterminated array");
    const char ch = c.take();
    if (ch == ']') break;
    if (ch != ',') c.fail("expected ',' or ']' in array");
    c.skip_ws(true);
    if (!c.done() && c.peek() == ']') {  // trailing comma
      c.take();
      break;
    }
  }
  return arr;
}

Json parse_value(Cursor& c) {
  c.skip_ws(true);
  if (c.done()) c.fail("expected a value");
  const char ch = c.peek();
  if (ch == '[') return parse_array(c);
  if (ch == '"' || ch == '\'') {
    const char quote = c.take();
    std::string s;
    while (!c.done() && c.peek() != quote) {
      char v = c.take();
      if (v == '\\' && quote == '"' && !c.done()) {
        const char esc = c.take();
        switch (esc) {
          case 'n': v = '\n'; break;
          case 't': v = '\t'; break;
          case '"': v = '"'; break;
          case '\\': v = '\\'; break;
          default: c.fail(std::string("unsupported escape \\") + esc);
        }
      }
      s.push_back(v);
    }
    if (c.done()) c.fail("unterminated string");
    c.take();
    return Json(s);
  }
  // bare token: bool or number
  std::string tok;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' && c.peek() != '\n' && c.peek() != '#' &&
         c.peek() != ' ' && c.peek() != '\t' && c.peek() != '\r') {
    tok.push_back(c.take());
  }
  if (tok == "true") return Json(true);
  if (tok == "false") return Json(false);
  if (tok == "inf") return Json("inf");
  try {
    size_t used = 0;
    if (tok.find_first_of(".eEnN") == std::string::npos) {
      const long long v = std::stoll(tok, &used);
      if (used == tok.size()) return Json(v);
    }
    const double v = std::stod(tok, &used);
    if (used == tok.size()) return Json(v);
  } catch (const std::exception&) {
  }
  c.fail("cannot parse value '" + tok + "'");
}

}  // namespace

Json parse_toml_lite(const std::string& text) {
  Json root = Json::object();
  Json* table = &root;
  Cursor c{text};
  while (true) {
    c.skip_ws(true);
    if (c.done()) break;
    if (c.peek() == '[') {
      c.take();
      Json* t = &root;
      while (true) {
        const std::string part = parse_bare_or_quoted_key(c);
        if (!t->contains(part)) (*t)[part] = Json::object();
        t = &(*t)[part];
        c.skip_ws(false);
        if (c.done()) c.fail("unterminated table header");
        const char ch = c.take();
        if (ch == ']') break;
        if (ch != '.') c.fail("expected '.' or ']' in table header");
      }
      table = t;
      continue;
    }
    const std::string key = parse_bare_or_quoted_key(c);
    c.skip_ws(false);
    if (c.done() || c.take() != '=') c.fail("expected '=' after key '" + key + "'");
    (*table)[key] = parse_value(c);
    c.skip_ws(false);
    if (!c.done() && c.peek() != '\n') c.fail("trailing characters after value of '" + key + "'");
  }
  return root;
}

Json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("load_config_file: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      return Json::parse(text);
    } catch (const Json::exception& e) {
      throw ValidationError("load_config_file: " + path + ": " + e.what());
    }
  }
  return parse_toml_lite(text);
}

}  // namespace floqgap
