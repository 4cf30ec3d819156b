#pragma once

#include <cctype>
#include <string>
#include <vector>

namespace timedc::testing {

// Whitespace-insensitive token stream for comparing C text. A `//` comment is
// one token (trimmed); preprocessor lines are one token each.
inline std::vector<std::string> c_tokens(const std::string& text) {
  static const char* two[] = {"+=", "-=", "*=", "/=", "%=", "<=", ">=", "==", "!=", "&&", "||", "++", "--", "->"};
  std::vector<std::string> out;
  std::size_t i = 0;
  const auto line_end = [&](std::size_t from) {
    const auto nl = text.find('\n', from);
    return nl == std::string::npos ? text.size() : nl;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (text.compare(i, 2, "//") == 0 || c == '#') {
      const std::size_t e = line_end(i);
      std::string t = text.substr(i, e - i);
      while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
      out.push_back(t);
      i = e;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back(text.substr(i, j - i));
      i = j;
    } else {
      std::string t(1, c);
      for (const char* p : two) {
        if (text.compare(i, 2, p) == 0) t = p;
      }
      out.push_back(t);
      i += t.size();
    }
  }
  return out;
}

// Splits at lines consisting of "..." and at inline " ... " elisions.
inline std::vector<std::string> elided_segments(const std::string& text) {
  std::vector<std::string> out(1);
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 3, "...") == 0) {
      out.emplace_back();
      i += 3;
      while (i < text.size() && text[i] == '.') ++i;
    } else {
      out.back() += text[i++];
    }
  }
  std::vector<std::string> kept;
  for (auto& s : out) {
    if (!c_tokens(s).empty()) kept.push_back(s);
  }
  return kept;
}

}  // namespace timedc::testing
