#include "ddts/value.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ddts/errors.hpp"

namespace ddts {

namespace {

[[noreturn]] void type_error(const char* want, const Value& v) {
  throw InternalError(std::string("value is ") + v.type_name() + ", wanted " +
                      want);
}

}  // namespace

const char* Value::type_name() const {
  if (is_null()) return "null";
  if (is_bool()) return "bool";
  if (is_int()) return "int";
  if (is_float()) return "float";
  if (is_string()) return "string";
  if (is_list()) return "list";
  return "map";
}

bool Value::as_bool() const {
  if (!is_bool()) type_error("bool", *this);
  return std::get<bool>(data_);
}

std::int64_t Value::as_int() const {
  if (!is_int()) type_error("int", *this);
  return std::get<std::int64_t>(data_);
}

double Value::as_float() const {
  if (is_int()) return static_cast<double>(std::get<std::int64_t>(data_));
  if (!is_float()) type_error("float", *this);
  return std::get<double>(data_);
}

const std::string& Value::as_string() const {
  if (!is_string()) type_error("string", *this);
  return std::get<std::string>(data_);
}

const Value::List& Value::as_list() const {
  if (!is_list()) type_error("list", *this);
  return std::get<List>(data_);
}

Value::List& Value::as_list() {
  if (!is_list()) type_error("list", *this);
  return std::get<List>(data_);
}

const Value::Map& Value::as_map() const {
  if (!is_map()) type_error("map", *this);
  return std::get<Map>(data_);
}

Value::Map& Value::as_map() {
  if (!is_map()) type_error("map", *this);
  return std::get<Map>(data_);
}

const Value* Value::find(std::string_view key) const {
  if (!is_map()) return nullptr;
  for (const auto& [k, v] : std::get<Map>(data_))
    if (k == key) return &v;
  return nullptr;
}

Value* Value::find(std::string_view key) {
  if (!is_map()) return nullptr;
  for (auto& [k, v] : std::get<Map>(data_))
    if (k == key) return &v;
  return nullptr;
}

void Value::set(std::string key, Value v) {
  if (is_null()) data_ = Map{};
  auto& m = as_map();
  for (auto& [k, old] : m) {
    if (k == key) {
      old = std::move(v);
      return;
    }
  }
  m.emplace_back(std::move(key), std::move(v));
}

bool Value::erase(std::string_view key) {
  if (!is_map()) return false;
  auto& m = std::get<Map>(data_);
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (it->first == key) {
      m.erase(it);
      return true;
    }
  }
  return false;
}

std::optional<std::string> Value::get_string(std::string_view key) const {
  const Value* v = find(key);
  if (!v || !v->is_string()) return std::nullopt;
  return v->as_string();
}

std::optional<bool> Value::get_bool(std::string_view key) const {
  const Value* v = find(key);
  if (!v || !v->is_bool()) return std::nullopt;
  return v->as_bool();
}

std::optional<std::int64_t> Value::get_int(std::string_view key) const {
  const Value* v = find(key);
  if (!v || !v->is_int()) return std::nullopt;
  return v->as_int();
}

std::optional<double> Value::get_float(std::string_view key) const {
  const Value* v = find(key);
  if (!v) return std::nullopt;
  if (v->is_float() || v->is_int()) return v->as_float();
  return std::nullopt;
}

// ---------------------------------------------------------------- parsing

namespace {

struct Line {
  int number;
  int indent;
  std::string content;  // trimmed, comment stripped
};

std::string strip_comment(const std::string& s) {
  bool quoted = false;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quoted) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        quoted = false;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == '#' && (i == 0 || s[i - 1] == ' ' || s[i - 1] == '\t')) {
      return s.substr(0, i);
    }
  }
  return s;
}

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.pop_back();
  return s;
}

bool valid_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
        c != '.')
      return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view text, std::string_view origin) : origin_(origin) {
    int number = 0;
    size_t start = 0;
    while (start <= text.size()) {
      size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string raw(text.substr(start, end - start));
      ++number;
      start = end + 1;
      std::string stripped = rtrim(strip_comment(raw));
      if (stripped.find_first_not_of(' ') == std::string::npos) {
        if (start > text.size()) break;
        continue;
      }
      int indent = 0;
      while (indent < static_cast<int>(stripped.size()) &&
             stripped[indent] == ' ')
        ++indent;
      if (stripped[indent] == '\t')
        fail(number, "tab characters are not allowed in indentation");
      lines_.push_back({number, indent, stripped.substr(indent)});
      if (start > text.size()) break;
    }
  }

  Value parse() {
    if (lines_.empty()) return Value();
    if (lines_[0].indent != 0)
      fail(lines_[0].number, "top-level content must not be indented");
    Value v = parse_block(0);
    if (pos_ < lines_.size())
      fail(lines_[pos_].number, "unexpected content after document");
    return v;
  }

 private:
  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(origin_, line, msg);
  }

  bool is_list_item(const Line& ln) const {
    return ln.content == "-" || ln.content.rfind("- ", 0) == 0;
  }

  // Does the text start with "key:" (followed by space or end)?
  static std::optional<std::pair<std::string, std::string>> split_key(
      const std::string& s) {
    size_t colon = s.find(':');
    if (colon == std::string::npos) return std::nullopt;
    std::string key = s.substr(0, colon);
    if (!valid_key(key)) return std::nullopt;
    if (colon + 1 == s.size()) return std::make_pair(key, std::string());
    if (s[colon + 1] != ' ') return std::nullopt;
    size_t rest = s.find_first_not_of(' ', colon + 1);
    if (rest == std::string::npos) return std::make_pair(key, std::string());
    return std::make_pair(key, s.substr(rest));
  }

  Value parse_block(int indent) {
    if (is_list_item(lines_[pos_])) return parse_list(indent);
    return parse_map(indent);
  }

  Value parse_map(int indent) {
    Value::Map m;
    while (pos_ < lines_.size() && lines_[pos_].indent == indent) {
      Line& ln = lines_[pos_];
      if (is_list_item(ln))
        fail(ln.number, "expected a key, found a list item");
      auto kv = split_key(ln.content);
      if (!kv) fail(ln.number, "expected 'key: value'");
      for (const auto& [k, v] : m)
        if (k == kv->first) fail(ln.number, "duplicate key: " + kv->first);
      ++pos_;
      Value val;
      if (!kv->second.empty()) {
        val = parse_scalar(kv->second, ln.number);
      } else if (pos_ < lines_.size() && lines_[pos_].indent > indent) {
        val = parse_block(lines_[pos_].indent);
      }
      m.emplace_back(kv->first, std::move(val));
      if (pos_ < lines_.size() && lines_[pos_].indent > indent)
        fail(lines_[pos_].number, "unexpected indentation");
    }
    return Value(std::move(m));
  }

  Value parse_list(int indent) {
    Value::List l;
    while (pos_ < lines_.size() && lines_[pos_].indent == indent &&
           is_list_item(lines_[pos_])) {
      Line& ln = lines_[pos_];
      std::string rest =
          ln.content == "-" ? std::string() : ln.content.substr(2);
      if (rest.empty()) {
        ++pos_;
        if (pos_ < lines_.size() && lines_[pos_].indent > indent)
          l.push_back(parse_block(lines_[pos_].indent));
        else
          l.push_back(Value());
      } else if (split_key(rest)) {
        // Inline map item: rewrite "- key: v" as a map entry two columns in
        // and reparse from here so following aligned keys join the item.
        ln.indent = indent + 2;
        ln.content = rest;
        l.push_back(parse_map(indent + 2));
      } else {
        ++pos_;
        l.push_back(parse_scalar(rest, ln.number));
      }
      if (pos_ < lines_.size() && lines_[pos_].indent > indent)
        fail(lines_[pos_].number, "unexpected indentation");
    }
    if (pos_ < lines_.size() && lines_[pos_].indent == indent &&
        !is_list_item(lines_[pos_]))
      fail(lines_[pos_].number, "expected a list item");
    return Value(std::move(l));
  }

  Value parse_scalar(const std::string& tok, int line) const {
    if (tok[0] == '"') return parse_quoted(tok, line);
    switch (tok[0]) {
      case '&':
      case '*':
      case '!':
      case '{':
      case '[':
      case '\'':
      case '`':
      case '%':
      case '@':
        fail(line, std::string("unsupported syntax: scalar begins with '") +
                       tok[0] + "'");
      default:
        break;
    }
    if (tok == "true") return Value(true);
    if (tok == "false") return Value(false);
    if (tok == "null" || tok == "~") return Value();
    // Integer?
    {
      std::int64_t n = 0;
      const char* b = tok.data();
      const char* e = tok.data() + tok.size();
      if (*b == '+') ++b;
      auto [p, ec] = std::from_chars(b, e, n);
      if (p == e && ec == std::errc() &&
          (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '-' ||
           tok[0] == '+'))
        return Value(tok[0] == '+' && n >= 0 ? n : n);
    }
    // Float?
    if (tok.find_first_of(".eE") != std::string::npos) {
      double d = 0;
      const char* b = tok.data();
      const char* e = tok.data() + tok.size();
      if (*b == '+') ++b;
      auto [p, ec] = std::from_chars(b, e, d);
      if (p == e && ec == std::errc()) return Value(d);
    }
    return Value(tok);
  }

  Value parse_quoted(const std::string& tok, int line) const {
    std::string out;
    size_t i = 1;
    for (; i < tok.size(); ++i) {
      char c = tok[i];
      if (c == '"') break;
      if (c == '\\') {
        if (++i == tok.size()) fail(line, "unterminated escape");
        switch (tok[i]) {
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          default: fail(line, "unknown escape in quoted string");
        }
      } else {
        out += c;
      }
    }
    if (i >= tok.size()) fail(line, "unterminated quoted string");
    if (i + 1 != tok.size()) fail(line, "trailing content after quoted string");
    return Value(out);
  }

  std::string origin_;
  std::vector<Line> lines_;
  size_t pos_ = 0;
};

}  // namespace

Value parse_document(std::string_view text, std::string_view origin) {
  return Parser(text, origin).parse();
}

Value load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.string());
}

// --------------------------------------------------------------- emission

namespace {

bool needs_quoting(const std::string& s) {
  if (s.empty()) return true;
  if (s != rtrim(s) || s[0] == ' ') return true;
  if (s == "true" || s == "false" || s == "null" || s == "~") return true;
  switch (s[0]) {
    case '&': case '*': case '!': case '{': case '[': case '\'': case '"':
    case '`': case '%': case '@': case '-': case '#':
      return true;
    default:
      break;
  }
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '\n' || c == '\t' || c == '\r') return true;
    if (c == ':' && (i + 1 == s.size() || s[i + 1] == ' ')) return true;
    if (c == '#' && i > 0 && s[i - 1] == ' ') return true;
  }
  // Would reparse as a number?
  {
    std::int64_t n;
    const char* b = s.data() + (s[0] == '+' ? 1 : 0);
    auto [p, ec] = std::from_chars(b, s.data() + s.size(), n);
    if (p == s.data() + s.size() && ec == std::errc()) return true;
  }
  if (s.find_first_of(".eE") != std::string::npos) {
    double d;
    const char* b = s.data() + (s[0] == '+' ? 1 : 0);
    auto [p, ec] = std::from_chars(b, s.data() + s.size(), d);
    if (p == s.data() + s.size() && ec == std::errc()) return true;
  }
  return false;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string scalar_token(const Value& v) {
  if (v.is_null()) return "null";
  if (v.is_bool()) return v.as_bool() ? "true" : "false";
  if (v.is_int()) return std::to_string(v.as_int());
  if (v.is_float()) {
    char buf[64];
    // Shortest representation that round-trips.
    for (int prec = 1; prec <= 17; ++prec) {
      std::snprintf(buf, sizeof buf, "%.*g", prec, v.as_float());
      double back;
      std::from_chars(buf, buf + std::char_traits<char>::length(buf), back);
      if (back == v.as_float()) break;
    }
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
  }
  const std::string& s = v.as_string();
  return needs_quoting(s) ? quote(s) : s;
}

void emit(const Value& v, int indent, bool sort, std::string& out) {
  std::string pad(indent, ' ');
  if (v.is_map()) {
    Value::Map entries = v.as_map();
    if (sort) {
      std::sort(entries.begin(), entries.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    for (const auto& [k, val] : entries) {
      if (!valid_key(k))
        throw InternalError("key not representable in definition syntax: " + k);
      if (val.is_map() && !val.as_map().empty()) {
        out += pad + k + ":\n";
        emit(val, indent + 2, sort, out);
      } else if (val.is_list() && !val.as_list().empty()) {
        out += pad + k + ":\n";
        emit(val, indent + 2, sort, out);
      } else if (val.is_null() || (val.is_map() && val.as_map().empty()) ||
                 (val.is_list() && val.as_list().empty())) {
        out += pad + k + ":\n";
      } else {
        out += pad + k + ": " + scalar_token(val) + "\n";
      }
    }
  } else if (v.is_list()) {
    for (const auto& item : v.as_list()) {
      if (item.is_map() || item.is_list()) {
        out += pad + "-\n";
        emit(item, indent + 2, sort, out);
      } else {
        out += pad + "- " + scalar_token(item) + "\n";
      }
    }
  } else {
    out += pad + scalar_token(v) + "\n";
  }
}

}  // namespace

std::string emit_document(const Value& v, bool sort_keys) {
  std::string out;
  emit(v, 0, sort_keys, out);
  return out;
}

Value merge_values(const Value& base, const Value& overlay) {
  if (overlay.is_null()) return base;
  if (!base.is_map() || !overlay.is_map()) return overlay;
  Value result = base;
  for (const auto& [k, v] : overlay.as_map()) {
    const Value* existing = result.find(k);
    if (existing && v.is_null()) continue;  // null overlay leaves base as-is
    if (existing && existing->is_map() && v.is_map())
      result.set(k, merge_values(*existing, v));
    else
      result.set(k, v);
  }
  return result;
}

}  // namespace ddts
