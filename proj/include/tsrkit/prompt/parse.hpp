#pragma once
// Model response extraction: the thought lives in the first \boxed1{...}
// and the action name in the first \boxed2{...}. Brace matching counts
// depth, so nested braces inside the thought survive intact.

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tsrkit/core/taxonomy.hpp"

namespace tsrkit::prompt {

enum class ParseErrorKind { MissingThought, MissingAction, UnbalancedBraces };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, const std::string& delimiter)
      : std::runtime_error(describe(kind) + " (" + delimiter + ")"), kind_(kind) {}
  ParseErrorKind kind() const { return kind_; }

 private:
  static std::string describe(ParseErrorKind kind) {
    switch (kind) {
      case ParseErrorKind::MissingThought: return "missing thought delimiter";
      case ParseErrorKind::MissingAction: return "missing action delimiter";
      case ParseErrorKind::UnbalancedBraces: return "unbalanced braces";
    }
    return "parse error";
  }
  ParseErrorKind kind_;
};

class UnknownCategory : public std::runtime_error {
 public:
  explicit UnknownCategory(const std::string& name)
      : std::runtime_error("unknown category name: \"" + name + "\""), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

struct BoxedAnswer {
  std::string thought;
  std::string action_name;
};

namespace detail {

// First occurrence of "boxed<digit>{" preceded by one or more backslashes;
// returns the index of the opening brace or npos.
inline std::size_t find_boxed_open(std::string_view text, char digit) {
  const std::string marker = std::string("boxed") + digit + "{";
  std::size_t from = 0;
  while (true) {
    const std::size_t pos = text.find(marker, from);
    if (pos == std::string_view::npos) return std::string_view::npos;
    if (pos > 0 && text[pos - 1] == '\\') return pos + marker.size() - 1;
    from = pos + 1;
  }
}

inline std::string balanced_content(std::string_view text, std::size_t open_brace,
                                    const std::string& delimiter) {
  int depth = 0;
  for (std::size_t i = open_brace; i < text.size(); ++i) {
    if (text[i] == '{') ++depth;
    else if (text[i] == '}') {
      --depth;
      if (depth == 0) return std::string(text.substr(open_brace + 1, i - open_brace - 1));
    }
  }
  throw ParseError(ParseErrorKind::UnbalancedBraces, delimiter);
}

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace detail

inline BoxedAnswer parse_boxed(std::string_view response) {
  const std::size_t thought_open = detail::find_boxed_open(response, '1');
  if (thought_open == std::string_view::npos)
    throw ParseError(ParseErrorKind::MissingThought, "\\boxed1{}");
  const std::size_t action_open = detail::find_boxed_open(response, '2');
  if (action_open == std::string_view::npos)
    throw ParseError(ParseErrorKind::MissingAction, "\\boxed2{}");

  BoxedAnswer out;
  out.thought = detail::balanced_content(response, thought_open, "\\boxed1{}");
  out.action_name = detail::trim(detail::balanced_content(response, action_open, "\\boxed2{}"));
  return out;
}

// Resolves a model-reported action name against the catalog: case-insensitive,
// whitespace-collapsed, with or without the trailing "Anomaly"/"Sequence".
inline AnomalyCategory normalize_action(std::string_view name, Arity arity) {
  auto cat = find_category(name, arity);
  if (!cat) throw UnknownCategory(std::string(name));
  return *cat;
}

}  // namespace tsrkit::prompt
