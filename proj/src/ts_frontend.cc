// Copyright 2026 The expsum Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "expsum/ts_frontend.h"

#include <algorithm>
#include <array>
#include <optional>
#include <set>

#include "expsum/error.h"
#include "expsum/text.h"

namespace expsum {

namespace {

using Kind = TsToken::Kind;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorKind::kParseFailure, message);
}

bool IsIdentStart(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
         static_cast<unsigned char>(c) >= 0x80;
}

bool IsIdentChar(char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Multi-character operators, longest first. '>>' is deliberately absent so
// that nested generic argument lists close one '>' at a time.
constexpr std::array<std::string_view, 27> kOperators = {
    "...", "===", "!==", "**=", "?\?=", "||=", "&&=", "=>", "==", "!=", "<=", ">=", "&&", "||",
    "??",  "?.",  "++",  "--",  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "**"};

bool RegexAllowedAfter(const std::vector<TsToken>& tokens) {
  if (tokens.empty()) return true;
  const TsToken& prev = tokens.back();
  switch (prev.kind) {
    case Kind::kNumber:
    case Kind::kString:
    case Kind::kTemplate:
    case Kind::kRegex:
      return false;
    case Kind::kDocComment:
      return true;
    case Kind::kPunct:
      return prev.text != ")" && prev.text != "]" && prev.text != "}";
    case Kind::kIdentifier: {
      static const std::set<std::string, std::less<>> kKeywords = {
          "return", "typeof", "instanceof", "in",   "of",    "new",  "delete",
          "void",   "throw",  "case",       "do",   "else",  "yield", "await"};
      return kKeywords.count(prev.text) > 0;
    }
  }
  return false;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<TsToken> Run() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\n') {
        newline_ = true;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        ++pos_;
      } else if (c == '/' && Peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (c == '/' && Peek(1) == '*') {
        LexBlockComment();
      } else if (IsIdentStart(c)) {
        size_t b = pos_;
        while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
        Emit(Kind::kIdentifier, b, pos_, std::string(src_.substr(b, pos_ - b)));
      } else if (IsDigit(c) || (c == '.' && IsDigit(Peek(1)))) {
        LexNumber();
      } else if (c == '"' || c == '\'') {
        LexString(c);
      } else if (c == '`') {
        size_t b = pos_;
        pos_ = SkipTemplate(pos_);
        Emit(Kind::kTemplate, b, pos_, std::string(src_.substr(b, pos_ - b)));
      } else if (c == '/' && RegexAllowedAfter(tokens_)) {
        LexRegex();
      } else {
        LexPunct();
      }
    }
    return std::move(tokens_);
  }

 private:
  char Peek(size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void Emit(Kind kind, size_t b, size_t e, std::string text) {
    tokens_.push_back(TsToken{kind, std::move(text), b, e, newline_});
    newline_ = false;
  }

  void LexBlockComment() {
    size_t b = pos_;
    size_t close = src_.find("*/", pos_ + 2);
    if (close == std::string_view::npos) Fail("unterminated block comment");
    pos_ = close + 2;
    std::string_view body = src_.substr(b, pos_ - b);
    bool is_doc = body.size() > 4 && body[2] == '*';
    bool has_newline = body.find('\n') != std::string_view::npos;
    if (is_doc) {
      Emit(Kind::kDocComment, b, pos_, std::string(body));
    }
    if (has_newline) newline_ = true;
  }

  void LexNumber() {
    size_t b = pos_;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (IsIdentChar(c) || c == '.') {
        if ((c == 'e' || c == 'E') && (Peek(1) == '+' || Peek(1) == '-') &&
            !(src_.substr(b, 2) == "0x" || src_.substr(b, 2) == "0X")) {
          pos_ += 2;
          continue;
        }
        if (c == '.' && Peek(1) == '.') break;
        ++pos_;
      } else {
        break;
      }
    }
    Emit(Kind::kNumber, b, pos_, std::string(src_.substr(b, pos_ - b)));
  }

  void LexString(char quote) {
    size_t b = pos_++;
    std::string value;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') Fail("unterminated string literal");
      char c = src_[pos_];
      if (c == '\\') {
        if (pos_ + 1 >= src_.size()) Fail("unterminated string literal");
        value.push_back(src_[pos_ + 1]);
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (c == quote) break;
      value.push_back(c);
    }
    Emit(Kind::kString, b, pos_, std::move(value));
  }

  // Returns the index just past the closing backtick of the template that
  // starts at `start`. Substitutions may nest strings and templates.
  size_t SkipTemplate(size_t start) {
    size_t i = start + 1;
    while (true) {
      if (i >= src_.size()) Fail("unterminated template literal");
      char c = src_[i];
      if (c == '\\') {
        i += 2;
      } else if (c == '`') {
        return i + 1;
      } else if (c == '$' && i + 1 < src_.size() && src_[i + 1] == '{') {
        i = SkipSubstitution(i + 2);
      } else {
        ++i;
      }
    }
  }

  size_t SkipSubstitution(size_t i) {
    int depth = 1;
    while (true) {
      if (i >= src_.size()) Fail("unterminated template substitution");
      char c = src_[i];
      if (c == '{') {
        ++depth;
        ++i;
      } else if (c == '}') {
        if (--depth == 0) return i + 1;
        ++i;
      } else if (c == '`') {
        i = SkipTemplate(i);
      } else if (c == '"' || c == '\'') {
        ++i;
        while (i < src_.size() && src_[i] != c) {
          if (src_[i] == '\n') Fail("unterminated string literal");
          i += src_[i] == '\\' ? 2 : 1;
        }
        if (i >= src_.size()) Fail("unterminated string literal");
        ++i;
      } else {
        ++i;
      }
    }
  }

  void LexRegex() {
    size_t b = pos_++;
    bool in_class = false;
    while (true) {
      if (pos_ >= src_.size() || src_[pos_] == '\n') Fail("unterminated regular expression");
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      if (c == '/' && !in_class) break;
    }
    while (pos_ < src_.size() && IsIdentChar(src_[pos_])) ++pos_;
    Emit(Kind::kRegex, b, pos_, std::string(src_.substr(b, pos_ - b)));
  }

  void LexPunct() {
    for (std::string_view op : kOperators) {
      if (src_.substr(pos_, op.size()) == op) {
        Emit(Kind::kPunct, pos_, pos_ + op.size(), std::string(op));
        pos_ += op.size();
        return;
      }
    }
    Emit(Kind::kPunct, pos_, pos_ + 1, std::string(1, src_[pos_]));
    ++pos_;
  }

  std::string_view src_;
  size_t pos_ = 0;
  bool newline_ = false;
  std::vector<TsToken> tokens_;
};

bool IsOpener(const TsToken& t) {
  return t.kind == Kind::kPunct && (t.text == "(" || t.text == "[" || t.text == "{");
}

bool IsCloser(const TsToken& t) {
  return t.kind == Kind::kPunct && (t.text == ")" || t.text == "]" || t.text == "}");
}

std::string_view MatchingCloser(std::string_view opener) {
  if (opener == "(") return ")";
  if (opener == "[") return "]";
  return "}";
}

// Tokens after which a newline does not end a statement.
bool IsContinuation(const TsToken& t) {
  if (t.kind != Kind::kPunct) return false;
  static const std::set<std::string, std::less<>> kCont = {
      "=", ",", "(", "[", "{", "+", "-", "*", "/", "%", ".", "?", ":", "&&", "||", "??",
      "=>", "|", "&", "<", "==", "===", "!=", "!==", "+=", "-=", "*=", "/=", "?."};
  return kCont.count(t.text) > 0;
}

const std::set<std::string, std::less<>>& Modifiers() {
  static const std::set<std::string, std::less<>> kModifiers = {
      "export", "declare", "default",  "public",   "private", "protected",
      "static", "async",   "abstract", "readonly", "override", "accessor"};
  return kModifiers;
}

struct Target {
  std::string name;
  bool is_enum = false;
  size_t params_open = 0;  // index of '(' (valid when has_params)
  size_t params_close = 0;
  bool has_params = false;
  std::optional<std::string> return_type;
  bool has_body = false;
  size_t body_begin = 0;  // token range of the body contents
  size_t body_end = 0;
  bool expression_body = false;
  std::optional<size_t> doc;  // index of the JSDoc token
  std::vector<std::string> namespaces;
};

class StructureParser {
 public:
  StructureParser(std::string_view src, const std::vector<TsToken>& tokens)
      : src_(src), t_(tokens) {}

  // Walks the whole file. Returns the first function-like declaration, if
  // any. Structural errors (unbalanced brackets) throw.
  std::optional<Target> Run() {
    std::vector<std::string> namespaces;
    if (ParseScope(ScopeKind::kTop, namespaces)) return target_;
    return std::nullopt;
  }

  const std::vector<std::string>& imports() const { return imports_; }

  std::string Text(size_t b, size_t e) const {
    if (b >= e) return "";
    std::string_view raw = src_.substr(t_[b].begin, t_[e - 1].end - t_[b].begin);
    return NormalizeSpacing(raw);
  }

  size_t SkipBalanced(size_t i) const {
    std::vector<std::string_view> stack;
    for (; i < t_.size(); ++i) {
      const TsToken& tok = t_[i];
      if (IsOpener(tok)) {
        stack.push_back(MatchingCloser(tok.text));
      } else if (IsCloser(tok)) {
        if (stack.empty() || stack.back() != tok.text) {
          Fail("unbalanced '" + tok.text + "' at offset " + std::to_string(tok.begin));
        }
        stack.pop_back();
        if (stack.empty()) return i + 1;
      }
    }
    Fail("unexpected end of input: missing '" + std::string(stack.empty() ? ")" : stack.back()) +
         "'");
  }

 private:
  enum class ScopeKind { kTop, kNamespace, kClass };

  static std::string NormalizeSpacing(std::string_view raw) {
    std::string out;
    bool space = false;
    for (char c : raw) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        space = !out.empty();
        continue;
      }
      if (space) out.push_back(' ');
      space = false;
      out.push_back(c);
    }
    return out;
  }

  bool AtEnd(size_t i) const { return i >= t_.size(); }
  bool Is(size_t i, std::string_view text) const { return i < t_.size() && t_[i].text == text && t_[i].kind != Kind::kString; }
  bool IsPunct(size_t i, std::string_view text) const {
    return i < t_.size() && t_[i].kind == Kind::kPunct && t_[i].text == text;
  }
  bool IsIdent(size_t i) const { return i < t_.size() && t_[i].kind == Kind::kIdentifier; }

  // Skips one statement starting at pos_. Stops after ';', before a '}' that
  // closes the enclosing scope, or before a token that starts a new line
  // when the previous token cannot continue the statement.
  void SkipStatement() {
    size_t start = pos_;
    while (!AtEnd(pos_)) {
      const TsToken& tok = t_[pos_];
      if (pos_ > start && tok.newline_before && !IsContinuation(t_[pos_ - 1]) &&
          !(tok.kind == Kind::kPunct && (tok.text == "." || tok.text == "?."))) {
        return;
      }
      if (IsPunct(pos_, ";")) {
        ++pos_;
        return;
      }
      if (IsPunct(pos_, "}")) {
        if (pos_ == start) ++pos_;  // stray closer is reported by the caller's scope
        return;
      }
      if (IsOpener(tok)) {
        pos_ = SkipBalanced(pos_);
      } else if (IsCloser(tok)) {
        Fail("unbalanced '" + tok.text + "' at offset " + std::to_string(tok.begin));
      } else {
        ++pos_;
      }
    }
  }

  void ParseImport() {
    ++pos_;  // 'import'
    while (!AtEnd(pos_)) {
      if (t_[pos_].kind == Kind::kString) {
        std::string module = t_[pos_].text;
        if (!module.empty() && module.front() == '@') module.erase(0, 1);
        if (std::find(imports_.begin(), imports_.end(), module) == imports_.end()) {
          imports_.push_back(module);
        }
        ++pos_;
        if (IsPunct(pos_, ")")) ++pos_;  // import x = require('y')
        if (IsPunct(pos_, ";")) ++pos_;
        return;
      }
      if (IsPunct(pos_, ";")) {
        ++pos_;
        return;
      }
      if (IsOpener(t_[pos_])) {
        pos_ = IsPunct(pos_, "(") ? pos_ + 1 : SkipBalanced(pos_);
      } else {
        ++pos_;
      }
    }
  }

  // pos_ at a '<'. Skips a generic parameter/argument list.
  void SkipAngles() {
    int depth = 0;
    while (!AtEnd(pos_)) {
      if (IsPunct(pos_, "<")) {
        ++depth;
      } else if (IsPunct(pos_, ">")) {
        if (--depth == 0) {
          ++pos_;
          return;
        }
      } else if (IsOpener(t_[pos_])) {
        pos_ = SkipBalanced(pos_);
        continue;
      }
      ++pos_;
    }
    Fail("unterminated generic parameter list");
  }

  // Parses an optional ": Type" after a parameter list. In arrow mode a
  // depth-0 '=>' ends the type.
  std::optional<std::string> ParseReturnType(bool arrow_mode) {
    if (!IsPunct(pos_, ":")) return std::nullopt;
    ++pos_;
    size_t start = pos_;
    int angle = 0;
    static const std::set<std::string, std::less<>> kTypeJoin = {"|", "&", ":", "<", ",", "=>",
                                                                  "(", "[", "keyof", "typeof"};
    while (!AtEnd(pos_)) {
      const TsToken& tok = t_[pos_];
      bool after_joiner = pos_ == start || kTypeJoin.count(t_[pos_ - 1].text) > 0;
      if (pos_ > start && angle == 0 && tok.newline_before && !after_joiner &&
          !IsPunct(pos_, "|") && !IsPunct(pos_, "&") && !IsPunct(pos_, "{")) {
        break;
      }
      if (IsPunct(pos_, "<")) {
        ++angle;
      } else if (IsPunct(pos_, ">")) {
        --angle;
      } else if (IsPunct(pos_, "{")) {
        if (after_joiner || angle > 0) {
          pos_ = SkipBalanced(pos_);
          continue;
        }
        break;
      } else if (IsPunct(pos_, "(") || IsPunct(pos_, "[")) {
        pos_ = SkipBalanced(pos_);
        continue;
      } else if (angle == 0 && (IsPunct(pos_, ";") || IsPunct(pos_, "}") || IsPunct(pos_, ")") ||
                                IsPunct(pos_, ","))) {
        break;
      } else if (angle == 0 && arrow_mode && IsPunct(pos_, "=>")) {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) Fail("missing return type after ':'");
    return Text(start, pos_);
  }

  void ParseBody(Target& target) {
    if (IsPunct(pos_, "{")) {
      size_t close = SkipBalanced(pos_);
      target.has_body = true;
      target.body_begin = pos_ + 1;
      target.body_end = close - 1;
      pos_ = close;
    } else if (IsPunct(pos_, ";")) {
      ++pos_;
    }
  }

  // pos_ at the (optional) generic list that follows the function name.
  bool ParseCallable(std::string name, const std::vector<std::string>& namespaces) {
    Target target;
    target.name = std::move(name);
    target.namespaces = namespaces;
    target.doc = pending_doc_;
    if (IsPunct(pos_, "<")) SkipAngles();
    if (!IsPunct(pos_, "(")) Fail("expected '(' after function name '" + target.name + "'");
    target.has_params = true;
    target.params_open = pos_;
    pos_ = SkipBalanced(pos_);
    target.params_close = pos_ - 1;
    target.return_type = ParseReturnType(false);
    ParseBody(target);
    target_ = std::move(target);
    return true;
  }

  // pos_ just after '='. Recognizes arrow functions and function
  // expressions bound to a variable or class property.
  bool TryParseBoundFunction(const std::string& name,
                             const std::vector<std::string>& namespaces) {
    size_t save = pos_;
    if (Is(pos_, "async")) ++pos_;
    if (Is(pos_, "function")) {
      ++pos_;
      if (IsPunct(pos_, "*")) ++pos_;
      if (IsIdent(pos_) && !IsPunct(pos_, "(")) ++pos_;
      return ParseCallable(name, namespaces);
    }
    Target target;
    target.name = name;
    target.namespaces = namespaces;
    target.doc = pending_doc_;
    if (IsPunct(pos_, "<")) SkipAngles();
    if (IsPunct(pos_, "(")) {
      size_t open = pos_;
      size_t after = SkipBalanced(pos_);
      pos_ = after;
      auto ret = ParseReturnType(true);
      if (!IsPunct(pos_, "=>")) {
        pos_ = save;
        return false;
      }
      target.has_params = true;
      target.params_open = open;
      target.params_close = after - 1;
      target.return_type = std::move(ret);
    } else if (IsIdent(pos_) && IsPunct(pos_ + 1, "=>")) {
      target.has_params = true;
      target.params_open = pos_;  // single bare parameter
      target.params_close = pos_ + 1;
      ++pos_;
    } else {
      pos_ = save;
      return false;
    }
    ++pos_;  // '=>'
    if (IsPunct(pos_, "{")) {
      ParseBody(target);
    } else {
      size_t begin = pos_;
      SkipStatement();
      size_t end = pos_;
      if (end > begin && IsPunct(end - 1, ";")) --end;
      target.has_body = true;
      target.expression_body = true;
      target.body_begin = begin;
      target.body_end = end;
    }
    target_ = std::move(target);
    return true;
  }

  bool ParseScope(ScopeKind kind, std::vector<std::string>& namespaces) {
    while (true) {
      if (AtEnd(pos_)) {
        if (kind != ScopeKind::kTop) Fail("unexpected end of input: missing '}'");
        return false;
      }
      const TsToken& tok = t_[pos_];
      if (tok.kind == Kind::kDocComment) {
        pending_doc_ = pos_++;
        continue;
      }
      if (IsPunct(pos_, "}")) {
        if (kind == ScopeKind::kTop) Fail("unbalanced '}' at offset " + std::to_string(tok.begin));
        ++pos_;
        return false;
      }
      if (IsPunct(pos_, ";")) {
        ++pos_;
        continue;
      }
      if (IsPunct(pos_, "@") && IsIdent(pos_ + 1)) {  // decorator
        pos_ += 2;
        while (IsPunct(pos_, ".") && IsIdent(pos_ + 1)) pos_ += 2;
        if (IsPunct(pos_, "(")) pos_ = SkipBalanced(pos_);
        continue;
      }
      if (tok.kind != Kind::kIdentifier) {
        SkipStatement();
        pending_doc_.reset();
        continue;
      }
      const std::string& word = tok.text;
      bool member_like = IsPunct(pos_ + 1, "(") || IsPunct(pos_ + 1, ":") ||
                         IsPunct(pos_ + 1, "=") || IsPunct(pos_ + 1, "?") ||
                         IsPunct(pos_ + 1, "<") || IsPunct(pos_ + 1, ";");
      bool reexport = IsPunct(pos_ + 1, "{") || IsPunct(pos_ + 1, "*") || IsPunct(pos_ + 1, "=");
      bool default_alias = Is(pos_ + 1, "default") && IsIdent(pos_ + 2) && IsPunct(pos_ + 3, ";");
      if (word == "export" && (reexport || default_alias)) {
        SkipStatement();
        pending_doc_.reset();
        continue;
      }
      if (Modifiers().count(word) > 0 && !member_like) {
        ++pos_;
        continue;
      }
      if (word == "import" && !IsPunct(pos_ + 1, "(") && !IsPunct(pos_ + 1, ".")) {
        ParseImport();
        pending_doc_.reset();
        continue;
      }
      if ((word == "namespace" || word == "module") &&
          (IsIdent(pos_ + 1) || (pos_ + 1 < t_.size() && t_[pos_ + 1].kind == Kind::kString))) {
        ++pos_;
        std::string name;
        if (t_[pos_].kind == Kind::kString) {
          name = t_[pos_].text;
          if (!name.empty() && name.front() == '@') name.erase(0, 1);
          ++pos_;
        } else {
          name = t_[pos_++].text;
          while (IsPunct(pos_, ".") && IsIdent(pos_ + 1)) {
            name += "." + t_[pos_ + 1].text;
            pos_ += 2;
          }
        }
        if (!IsPunct(pos_, "{")) {
          SkipStatement();
          continue;
        }
        ++pos_;
        pending_doc_.reset();
        namespaces.push_back(name);
        if (ParseScope(ScopeKind::kNamespace, namespaces)) return true;
        namespaces.pop_back();
        continue;
      }
      if ((word == "class" || word == "interface" || word == "struct") && IsIdent(pos_ + 1)) {
        pos_ += 2;
        while (!AtEnd(pos_) && !IsPunct(pos_, "{")) {
          if (IsPunct(pos_, "<")) {
            SkipAngles();
          } else if (IsPunct(pos_, "(") || IsPunct(pos_, "[")) {
            pos_ = SkipBalanced(pos_);
          } else if (IsPunct(pos_, ";") || IsCloser(t_[pos_])) {
            Fail("malformed " + word + " declaration");
          } else {
            ++pos_;
          }
        }
        if (AtEnd(pos_)) Fail("unexpected end of input in " + word + " declaration");
        ++pos_;
        pending_doc_.reset();
        if (ParseScope(ScopeKind::kClass, namespaces)) return true;
        continue;
      }
      if (word == "const" && Is(pos_ + 1, "enum")) {
        ++pos_;
        continue;
      }
      if (word == "enum" && IsIdent(pos_ + 1) && IsPunct(pos_ + 2, "{")) {
        Target target;
        target.name = t_[pos_ + 1].text;
        target.is_enum = true;
        target.doc = pending_doc_;
        target.namespaces = namespaces;
        pos_ = SkipBalanced(pos_ + 2);
        target_ = std::move(target);
        return true;
      }
      if (word == "function" && !member_like) {
        ++pos_;
        if (IsPunct(pos_, "*")) ++pos_;
        std::string name = "default";
        if (IsIdent(pos_)) name = t_[pos_++].text;
        return ParseCallable(std::move(name), namespaces);
      }
      if (word == "type" && IsIdent(pos_ + 1)) {
        SkipStatement();
        pending_doc_.reset();
        continue;
      }
      if ((word == "const" || word == "let" || word == "var") && IsIdent(pos_ + 1)) {
        std::string name = t_[pos_ + 1].text;
        pos_ += 2;
        if (IsPunct(pos_, ":")) {
          ++pos_;
          while (!AtEnd(pos_) && !IsPunct(pos_, "=") && !IsPunct(pos_, ";") &&
                 !t_[pos_].newline_before) {
            pos_ = IsOpener(t_[pos_]) ? SkipBalanced(pos_) : pos_ + 1;
          }
        }
        if (IsPunct(pos_, "=")) {
          ++pos_;
          if (TryParseBoundFunction(name, namespaces)) return true;
        }
        SkipStatement();
        pending_doc_.reset();
        continue;
      }
      if (kind == ScopeKind::kClass) {
        size_t p = pos_;
        if ((word == "get" || word == "set") && IsIdent(p + 1) && IsPunct(p + 2, "(")) {
          pos_ = p + 2;
          return ParseCallable(t_[p + 1].text, namespaces);
        }
        size_t q = p + 1;
        if (IsPunct(q, "?")) ++q;
        if (IsPunct(q, "(") || IsPunct(q, "<")) {
          pos_ = q;
          return ParseCallable(word, namespaces);
        }
        if (IsPunct(q, "=")) {
          pos_ = q + 1;
          if (TryParseBoundFunction(word, namespaces)) return true;
        }
      }
      SkipStatement();
      pending_doc_.reset();
    }
  }

  std::string_view src_;
  const std::vector<TsToken>& t_;
  size_t pos_ = 0;
  std::optional<size_t> pending_doc_;
  std::vector<std::string> imports_;
  Target target_;
};

// ---------------------------------------------------------------------------
// Parameters.

std::vector<ParameterField> ParseParameters(const StructureParser& parser,
                                            const std::vector<TsToken>& t, const Target& target) {
  std::vector<ParameterField> params;
  if (!target.has_params) return params;
  size_t begin = target.params_open + 1;
  size_t end = target.params_close;
  if (t[target.params_open].kind == Kind::kIdentifier) {  // bare arrow parameter
    params.push_back(ParameterField{t[target.params_open].text, std::nullopt, std::nullopt});
    return params;
  }

  // Split on depth-0 commas. Angle brackets count only inside the type
  // part of a segment, since defaults may contain comparisons.
  std::vector<std::pair<size_t, size_t>> segments;
  size_t seg = begin;
  int depth = 0;
  int angle = 0;
  bool in_default = false;
  for (size_t i = begin; i < end; ++i) {
    const TsToken& tok = t[i];
    if (tok.kind == Kind::kPunct) {
      if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
      else if (tok.text == ")" || tok.text == "]" || tok.text == "}") --depth;
      else if (tok.text == "<" && !in_default) ++angle;
      else if (tok.text == ">" && !in_default && angle > 0) --angle;
      else if (tok.text == "=" && depth == 0 && angle == 0) in_default = true;
      else if (tok.text == "," && depth == 0 && angle == 0) {
        segments.emplace_back(seg, i);
        seg = i + 1;
        in_default = false;
      }
    }
  }
  if (seg < end) segments.emplace_back(seg, end);

  static const std::set<std::string, std::less<>> kParamModifiers = {
      "public", "private", "protected", "readonly", "override"};
  for (auto [b, e] : segments) {
    size_t i = b;
    while (i < e && t[i].kind == Kind::kPunct && t[i].text == "@") {  // decorators
      i += 2;
      while (i + 1 < e && t[i].text == "." ) i += 2;
      if (i < e && t[i].text == "(") i = parser.SkipBalanced(i);
    }
    while (i + 1 < e && t[i].kind == Kind::kIdentifier && kParamModifiers.count(t[i].text) &&
           (t[i + 1].kind == Kind::kIdentifier || t[i + 1].text == "{" || t[i + 1].text == "[")) {
      ++i;
    }
    if (i >= e) continue;
    ParameterField field;
    std::string pattern;
    bool rest = false;
    if (t[i].text == "...") {
      rest = true;
      ++i;
    }
    if (i < e && t[i].kind == Kind::kIdentifier) {
      field.name = (rest ? "..." : "") + t[i].text;
      ++i;
    } else if (i < e && (t[i].text == "{" || t[i].text == "[")) {
      size_t close = parser.SkipBalanced(i);
      pattern = parser.Text(i, close);
      i = close;
    }
    if (field.name == "this") continue;
    bool optional = false;
    if (i < e && t[i].text == "?") {
      optional = true;
      ++i;
    }
    if (i < e && t[i].text == ":") {
      size_t type_begin = ++i;
      int d = 0;
      while (i < e) {
        const std::string& x = t[i].text;
        if (x == "(" || x == "[" || x == "{" || x == "<") ++d;
        else if (x == ")" || x == "]" || x == "}" || x == ">") --d;
        else if (x == "=" && d == 0) break;
        ++i;
      }
      std::string type = parser.Text(type_begin, i);
      if (!type.empty()) field.type_annotation = (optional ? "?" : "") + type;
    }
    if (i < e && t[i].text == "=") {
      std::string def = parser.Text(i + 1, e);
      if (!def.empty()) field.default_value = def;
    }
    if (field.name.empty() && !field.type_annotation) field.name = pattern;
    params.push_back(std::move(field));
  }
  return params;
}

// ---------------------------------------------------------------------------
// Body analysis.

bool PrecededByDot(const std::vector<TsToken>& t, size_t i, size_t begin) {
  return i > begin && t[i - 1].kind == Kind::kPunct && (t[i - 1].text == "." || t[i - 1].text == "?.");
}

bool HasBoundaryAfterPrefix(const std::string& name, size_t prefix_len) {
  if (name.size() == prefix_len) return true;
  char c = name[prefix_len];
  return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool StartsWithWord(const std::string& name, std::string_view prefix) {
  std::string lower = ToLower(name);
  return lower.rfind(prefix, 0) == 0 && HasBoundaryAfterPrefix(name, prefix.size());
}

class BodyAnalyzer {
 public:
  BodyAnalyzer(const StructureParser& parser, const std::vector<TsToken>& t, size_t begin,
               size_t end)
      : parser_(parser), t_(t), begin_(begin), end_(std::min(end, t.size())) {}

  std::string Skeleton() const {
    std::vector<std::string> labels;
    auto add = [&](const char* label) {
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    };
    for (size_t i = begin_; i < end_; ++i) {
      const TsToken& tok = t_[i];
      if (tok.kind == Kind::kPunct && tok.text == "=>") {
        if (i + 1 < end_ && t_[i + 1].text == "{") i = parser_.SkipBalanced(i + 1) - 1;
        continue;
      }
      if (tok.kind != Kind::kIdentifier) continue;
      // Registrations are usually member calls (emitter.on), so test before
      // the member-access filter.
      if (i + 1 < end_ && t_[i + 1].text == "(" && IsCallbackRegistration(i)) {
        add("callback registration");
      }
      if (PrecededByDot(t_, i, begin_)) continue;
      const std::string& w = tok.text;
      if (w == "function") {
        i = SkipNestedFunction(i) - 1;
      } else if (w == "if") {
        add("conditional");
      } else if (w == "for" || w == "while" || w == "do") {
        add("loop");
      } else if (w == "try") {
        add("try");
      } else if (w == "switch") {
        add("switch");
      } else if (w == "return") {
        add("return statement");
      }
    }
    return Join(labels, "; ");
  }

  std::optional<std::string> IoBehavior() const {
    std::vector<std::pair<std::string, std::vector<std::string>>> families;
    auto add = [&](const std::string& family, const std::string& callee) {
      auto it = std::find_if(families.begin(), families.end(),
                             [&](const auto& f) { return f.first == family; });
      if (it == families.end()) {
        families.push_back({family, {callee}});
      } else if (std::find(it->second.begin(), it->second.end(), callee) == it->second.end()) {
        it->second.push_back(callee);
      }
    };
    for (size_t i = begin_; i + 1 < end_; ++i) {
      if (t_[i].kind != Kind::kIdentifier || t_[i + 1].text != "(") continue;
      const std::string& name = t_[i].text;
      size_t root = i;
      while (root >= begin_ + 2 && (t_[root - 1].text == "." || t_[root - 1].text == "?.") &&
             t_[root - 2].kind == Kind::kIdentifier) {
        root -= 2;
      }
      std::string callee;
      for (size_t k = root; k <= i; k += 2) {
        if (k > root) callee += ".";
        callee += t_[k].text;
      }
      const std::string& root_name = t_[root].text;
      if (root != i && (root_name == "console" || root_name == "hilog")) {
        add("print", callee);
      } else if (StartsWithWord(name, "print")) {
        add("print", callee);
      } else if (StartsWithWord(name, "read")) {
        add("read", callee);
      } else if (StartsWithWord(name, "write") || StartsWithWord(name, "append")) {
        add("write", callee);
      } else if (StartsWithWord(name, "open") || name == "fopen") {
        add("open", callee);
      }
    }
    if (families.empty()) return std::nullopt;
    std::vector<std::string> parts;
    for (const auto& [family, callees] : families) parts.push_back(family + ": " + Join(callees, ", "));
    return Join(parts, "; ");
  }

  std::optional<std::string> VariableModification(const std::vector<ParameterField>& params) const {
    std::set<std::string> locals;
    for (const auto& p : params) {
      std::string n = p.name;
      if (n.rfind("...", 0) == 0) n.erase(0, 3);
      if (!n.empty()) locals.insert(n);
    }
    std::set<size_t> declaration_assigns;
    CollectLocals(locals, declaration_assigns);

    static const std::set<std::string, std::less<>> kAssignOps = {
        "=", "+=", "-=", "*=", "/=", "%=", "**=", "&=", "|=", "^=", "?\?=", "||=", "&&="};
    std::vector<std::string> names;
    auto record = [&](size_t chain_begin, size_t chain_end) {
      if (chain_begin >= chain_end || t_[chain_begin].kind != Kind::kIdentifier) return;
      const std::string& root = t_[chain_begin].text;
      std::string name;
      if (root == "this") {
        if (chain_begin + 2 < chain_end + 1 && chain_begin + 2 < end_ &&
            t_[chain_begin + 1].text == "." && t_[chain_begin + 2].kind == Kind::kIdentifier) {
          name = "this." + t_[chain_begin + 2].text;
        } else {
          return;
        }
      } else {
        if (locals.count(root) > 0) return;
        for (size_t k = chain_begin; k < chain_end; ++k) {
          if (t_[k].text == "[") {
            k = parser_.SkipBalanced(k) - 1;
            continue;
          }
          name += t_[k].text;
        }
      }
      if (std::find(names.begin(), names.end(), name) == names.end()) names.push_back(name);
    };

    for (size_t i = begin_; i < end_; ++i) {
      const TsToken& tok = t_[i];
      if (tok.kind != Kind::kPunct) continue;
      if (kAssignOps.count(tok.text) > 0) {
        if (declaration_assigns.count(i) > 0) continue;
        size_t chain_end = i;
        size_t chain_begin = ChainStartBefore(i);
        record(chain_begin, chain_end);
      } else if (tok.text == "++" || tok.text == "--") {
        if (i + 1 < end_ && t_[i + 1].kind == Kind::kIdentifier &&
            !(i > begin_ && (t_[i - 1].kind == Kind::kIdentifier || t_[i - 1].text == "]" ||
                             t_[i - 1].text == ")"))) {
          size_t e = i + 1;
          while (e + 1 < end_ && t_[e].kind == Kind::kIdentifier && t_[e + 1].text == "." &&
                 e + 2 < end_ && t_[e + 2].kind == Kind::kIdentifier) {
            e += 2;
          }
          record(i + 1, e + 1);
        } else {
          record(ChainStartBefore(i), i);
        }
      }
    }
    if (names.empty()) return std::nullopt;
    return Join(names, ", ");
  }

 private:
  // Start of the member chain (a.b[c].d) that ends just before index i.
  size_t ChainStartBefore(size_t i) const {
    size_t k = i;
    while (k > begin_) {
      const TsToken& prev = t_[k - 1];
      if (prev.kind == Kind::kIdentifier) {
        --k;
        if (k > begin_ && t_[k - 1].text == ".") {
          --k;
          continue;
        }
        return k;
      }
      if (prev.text == "]") {
        size_t depth = 0;
        size_t j = k - 1;
        while (true) {
          if (t_[j].text == "]") ++depth;
          if (t_[j].text == "[" && --depth == 0) break;
          if (j == begin_) return i;
          --j;
        }
        k = j;
        continue;
      }
      break;
    }
    return k == i ? i : k;
  }

  size_t SkipNestedFunction(size_t i) const {
    size_t j = i + 1;
    while (j < end_ && t_[j].text != "(") ++j;
    if (j >= end_) return end_;
    j = parser_.SkipBalanced(j);
    while (j < end_ && t_[j].text != "{") {
      j = (t_[j].text == "(" || t_[j].text == "[") ? parser_.SkipBalanced(j) : j + 1;
    }
    if (j >= end_) return end_;
    return parser_.SkipBalanced(j);
  }

  bool IsCallbackRegistration(size_t i) const {
    static const std::set<std::string, std::less<>> kNames = {
        "on", "once", "subscribe", "addEventListener", "addListener", "setTimeout",
        "setInterval", "registerCallback"};
    const std::string& name = t_[i].text;
    if (kNames.count(name) > 0) return true;
    if (name.size() > 8 && name.rfind("register", 0) == 0 && name[8] >= 'A' && name[8] <= 'Z') {
      return true;
    }
    if (name.size() > 2 && name[0] == 'o' && name[1] == 'n' && name[2] >= 'A' && name[2] <= 'Z') {
      size_t close = parser_.SkipBalanced(i + 1);
      for (size_t k = i + 2; k + 1 < close; ++k) {
        if (t_[k].text == "=>" || (t_[k].kind == Kind::kIdentifier && t_[k].text == "function")) {
          return true;
        }
      }
    }
    return false;
  }

  void CollectLocals(std::set<std::string>& locals, std::set<size_t>& declaration_assigns) const {
    for (size_t i = begin_; i < end_; ++i) {
      const TsToken& tok = t_[i];
      if (tok.kind == Kind::kIdentifier && !PrecededByDot(t_, i, begin_) &&
          (tok.text == "let" || tok.text == "const" || tok.text == "var")) {
        CollectDeclarators(i + 1, locals, declaration_assigns);
      } else if (tok.kind == Kind::kIdentifier && tok.text == "catch" && i + 2 < end_ &&
                 t_[i + 1].text == "(" && t_[i + 2].kind == Kind::kIdentifier) {
        locals.insert(t_[i + 2].text);
      } else if (tok.kind == Kind::kPunct && tok.text == "=>") {
        if (i > begin_ && t_[i - 1].kind == Kind::kIdentifier) {
          locals.insert(t_[i - 1].text);
        } else if (i > begin_) {
          // Walk back over an optional return type to the parameter list.
          size_t j = i - 1;
          while (j > begin_ && t_[j].text != ")") --j;
          if (t_[j].text == ")") MarkParamList(j, locals, declaration_assigns);
        }
      } else if (tok.kind == Kind::kIdentifier && tok.text == "function") {
        size_t j = i + 1;
        while (j < end_ && t_[j].text != "(") ++j;
        if (j < end_) {
          size_t close = parser_.SkipBalanced(j) - 1;
          MarkParamList(close, locals, declaration_assigns);
        }
      }
    }
  }

  // `close` is the index of a ')' ending a parameter list.
  void MarkParamList(size_t close, std::set<std::string>& locals,
                     std::set<size_t>& declaration_assigns) const {
    size_t depth = 0;
    size_t j = close;
    while (true) {
      const std::string& x = t_[j].text;
      if (x == ")" || x == "]" || x == "}") ++depth;
      if (x == "(" || x == "[" || x == "{") {
        if (--depth == 0) break;
      }
      if (j == begin_) return;
      --j;
    }
    for (size_t k = j + 1; k < close; ++k) {
      if (t_[k].kind == Kind::kIdentifier) locals.insert(t_[k].text);
      if (t_[k].text == "=") declaration_assigns.insert(k);
    }
  }

  void CollectDeclarators(size_t i, std::set<std::string>& locals,
                          std::set<size_t>& declaration_assigns) const {
    bool expect_name = true;
    int depth = 0;
    for (; i < end_; ++i) {
      const TsToken& tok = t_[i];
      if (expect_name) {
        if (tok.kind == Kind::kIdentifier) {
          locals.insert(tok.text);
        } else if (tok.text == "{" || tok.text == "[") {
          size_t close = parser_.SkipBalanced(i);
          for (size_t k = i + 1; k < close; ++k) {
            if (t_[k].kind == Kind::kIdentifier) locals.insert(t_[k].text);
          }
          i = close - 1;
        }
        expect_name = false;
        continue;
      }
      if (tok.text == "(" || tok.text == "[" || tok.text == "{") {
        ++depth;
      } else if (tok.text == ")" || tok.text == "]" || tok.text == "}") {
        if (--depth < 0) return;
      } else if (depth == 0 && tok.text == "=") {
        declaration_assigns.insert(i);
      } else if (depth == 0 && tok.text == ",") {
        expect_name = true;
      } else if (depth == 0 && (tok.text == ";" || tok.text == "of" || tok.text == "in")) {
        return;
      } else if (depth == 0 && tok.newline_before && i > 0 && !IsContinuation(t_[i - 1])) {
        return;
      }
    }
  }

  const StructureParser& parser_;
  const std::vector<TsToken>& t_;
  size_t begin_;
  size_t end_;
};

}  // namespace

std::vector<TsToken> LexTs(std::string_view source) { return Lexer(source).Run(); }

std::map<std::string, std::string> ParseJsDocTags(std::string_view comment) {
  std::string_view body = comment;
  if (body.rfind("/**", 0) == 0) body.remove_prefix(3);
  if (body.size() >= 2 && body.substr(body.size() - 2) == "*/") body.remove_suffix(2);

  std::map<std::string, std::string> tags;
  std::string current_tag;
  std::vector<std::string> current_lines;
  auto flush = [&] {
    if (current_tag.empty()) return;
    std::string value = Trim(Join(current_lines, "\n"));
    if (value.empty()) value = "true";
    auto [it, inserted] = tags.emplace(current_tag, value);
    if (!inserted) it->second += "; " + value;
    current_tag.clear();
    current_lines.clear();
  };

  size_t start = 0;
  while (start <= body.size()) {
    size_t nl = body.find('\n', start);
    std::string_view line = body.substr(start, nl == std::string_view::npos ? body.size() - start
                                                                            : nl - start);
    std::string text = Trim(line);
    if (!text.empty() && text.front() == '*') text = Trim(std::string_view(text).substr(1));
    if (text.size() > 1 && text[0] == '@' && std::isalpha(static_cast<unsigned char>(text[1]))) {
      flush();
      size_t e = 1;
      while (e < text.size() && (std::isalnum(static_cast<unsigned char>(text[e])) ||
                                 text[e] == '_' || text[e] == '-')) {
        ++e;
      }
      current_tag = text.substr(0, e);
      current_lines.push_back(Trim(std::string_view(text).substr(e)));
    } else if (!current_tag.empty()) {
      current_lines.push_back(text);
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  flush();
  return tags;
}

MetadataSet TsFrontend::Parse(std::string_view source) const {
  std::vector<TsToken> tokens = LexTs(source);
  StructureParser parser(source, tokens);
  std::optional<Target> target = parser.Run();
  if (!target) Fail("no function declaration found");

  MetadataSet m;
  m.function_name = target->name;
  m.dependency = parser.imports();
  if (!target->namespaces.empty()) m.package_module = Join(target->namespaces, ".");
  if (target->doc) m.dmt = ParseJsDocTags(tokens[*target->doc].text);
  if (target->is_enum) return m;

  m.parameters = ParseParameters(parser, tokens, *target);
  m.return_type = target->return_type;
  if (target->has_body) {
    BodyAnalyzer body(parser, tokens, target->body_begin, target->body_end);
    std::string skeleton = target->expression_body ? "return statement" : body.Skeleton();
    if (target->expression_body) {
      std::string inner = body.Skeleton();
      if (inner.find("callback registration") != std::string::npos) {
        skeleton += "; callback registration";
      }
    }
    if (!skeleton.empty()) m.control_flow_skeleton = skeleton;
    m.io_behavior = body.IoBehavior();
    m.variable_modification = body.VariableModification(m.parameters);
  }
  return m;
}

std::string TsFrontend::ControlFlowSkeleton(std::string_view source) const {
  std::vector<TsToken> tokens = LexTs(source);
  StructureParser parser(source, tokens);
  std::optional<Target> target = parser.Run();
  if (!target) {
    return BodyAnalyzer(parser, tokens, 0, tokens.size()).Skeleton();
  }
  if (!target->has_body) return "";
  if (target->expression_body) return "return statement";
  return BodyAnalyzer(parser, tokens, target->body_begin, target->body_end).Skeleton();
}

}  // namespace expsum
