#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace ddts {

// Ordered scalar/list/map tree: the in-memory form of definition files and
// of the hook wire protocol. The on-disk syntax is a strict indentation-based
// subset of YAML (maps, lists, string/int/float/bool scalars); anchors,
// aliases, tags and flow syntax are rejected.
class Value {
 public:
  using List = std::vector<Value>;
  using Map = std::vector<std::pair<std::string, Value>>;

  Value() = default;
  Value(bool b) : data_(b) {}
  Value(int v) : data_(static_cast<std::int64_t>(v)) {}
  Value(std::int64_t v) : data_(v) {}
  Value(double v) : data_(v) {}
  Value(std::string s) : data_(std::move(s)) {}
  Value(const char* s) : data_(std::string(s)) {}
  Value(List l) : data_(std::move(l)) {}
  Value(Map m) : data_(std::move(m)) {}

  static Value map() { return Value(Map{}); }
  static Value list() { return Value(List{}); }

  bool is_null() const { return std::holds_alternative<std::monostate>(data_); }
  bool is_bool() const { return std::holds_alternative<bool>(data_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data_); }
  bool is_float() const { return std::holds_alternative<double>(data_); }
  bool is_string() const { return std::holds_alternative<std::string>(data_); }
  bool is_list() const { return std::holds_alternative<List>(data_); }
  bool is_map() const { return std::holds_alternative<Map>(data_); }
  bool is_scalar() const { return !is_list() && !is_map(); }

  bool as_bool() const;
  std::int64_t as_int() const;
  double as_float() const;
  const std::string& as_string() const;
  const List& as_list() const;
  List& as_list();
  const Map& as_map() const;
  Map& as_map();

  // Map access. find returns nullptr when this is not a map or the key is
  // absent; set inserts or replaces, preserving insertion order.
  const Value* find(std::string_view key) const;
  Value* find(std::string_view key);
  void set(std::string key, Value v);
  bool erase(std::string_view key);

  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;
  std::optional<std::int64_t> get_int(std::string_view key) const;
  std::optional<double> get_float(std::string_view key) const;

  friend bool operator==(const Value&, const Value&) = default;

  const char* type_name() const;

 private:
  std::variant<std::monostate, bool, std::int64_t, double, std::string, List,
               Map>
      data_;
};

// Parsing and emission. parse_document throws ParseError; origin names the
// source for diagnostics. Parsing the output of emit_document yields an
// equal Value (empty containers degrade to null).
Value parse_document(std::string_view text,
                     std::string_view origin = "<string>");
Value load_document(const std::filesystem::path& path);
std::string emit_document(const Value& v, bool sort_keys = false);

// Recursive key-wise merge: maps merge per key, lists and scalars from the
// overlay replace the base wholesale. A null overlay (at any level) leaves
// the corresponding base value untouched; a null base behaves as empty.
Value merge_values(const Value& base, const Value& overlay);

}  // namespace ddts
