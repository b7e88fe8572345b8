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

#include "expsum/knowledge_base.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <unordered_set>

#include "expsum/error.h"
#include "expsum/text.h"

namespace expsum {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

bool IsUpper(char c) { return c >= 'A' && c <= 'Z'; }
bool IsLower(char c) { return c >= 'a' && c <= 'z'; }
bool IsAlnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

// Standard English stopwords (the usual NLTK list, minus contractions).
const std::unordered_set<std::string>& Stopwords() {
  static const std::unordered_set<std::string> kWords = {
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
      "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
      "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
      "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
      "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
      "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
      "for", "with", "about", "against", "between", "into", "through", "during", "before",
      "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
      "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
      "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
      "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can",
      "will", "just", "don", "should", "now", "d", "ll", "m", "o", "re", "ve", "y", "ain",
      "aren", "couldn", "didn", "doesn", "hadn", "hasn", "haven", "isn", "ma", "mightn",
      "mustn", "needn", "shan", "shouldn", "wasn", "weren", "won", "wouldn", "also", "used",
      "use", "may", "must", "would", "could", "via", "e", "g", "eg", "ie", "etc"};
  return kWords;
}

// Whitespace-separated chunks with surrounding punctuation removed. A
// leading '@' survives since it is part of package names.
std::vector<std::string> Chunks(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string_view chunk = text.substr(start, i - start);
    auto keep_front = [](char c) { return IsAlnum(c) || c == '_' || c == '@' || c == '$'; };
    auto keep_back = [](char c) { return IsAlnum(c) || c == '_'; };
    while (!chunk.empty() && !keep_front(chunk.front())) chunk.remove_prefix(1);
    while (!chunk.empty() && !keep_back(chunk.back())) chunk.remove_suffix(1);
    for (std::string_view poss : {"'s", "\xE2\x80\x99s"}) {
      if (chunk.size() > poss.size() && chunk.substr(chunk.size() - poss.size()) == poss) {
        chunk.remove_suffix(poss.size());
      }
    }
    if (!chunk.empty()) out.emplace_back(chunk);
  }
  return out;
}

bool LooksLikeTerm(const std::string& w) {
  bool has_alpha = std::any_of(w.begin(), w.end(), [](char c) { return IsUpper(c) || IsLower(c); });
  if (!has_alpha) return false;
  if (w.find('_') != std::string::npos) return true;

  bool has_lower = std::any_of(w.begin(), w.end(), IsLower);
  bool inner_upper = std::any_of(w.begin() + 1, w.end(), IsUpper);
  if (has_lower && inner_upper) return true;

  int upper = static_cast<int>(std::count_if(w.begin(), w.end(), IsUpper));
  if (!has_lower && upper >= 2 &&
      std::all_of(w.begin(), w.end(), [](char c) { return IsAlnum(c); })) {
    return true;
  }

  // Joined identifiers such as "ohos.battery" or "@system.app": every
  // segment must be two or more characters so "e.g" does not qualify.
  static constexpr std::string_view kJoiners = ".@#:$";
  std::vector<std::string> segments;
  std::string cur;
  bool joined = false;
  for (char c : w) {
    if (kJoiners.find(c) != std::string_view::npos) {
      joined = true;
      segments.push_back(cur);
      cur.clear();
    } else if (IsAlnum(c)) {
      cur.push_back(c);
    } else {
      return false;
    }
  }
  segments.push_back(cur);
  if (!joined) return false;
  if (!segments.empty() && segments.front().empty() && w.front() == '@') {
    segments.erase(segments.begin());
  }
  if (segments.size() < 2 && w.front() != '@') return false;
  return std::all_of(segments.begin(), segments.end(),
                     [](const std::string& s) { return s.size() >= 2; });
}

struct Sentence {
  std::string text;
  std::vector<std::string> chunks;
};

std::vector<Sentence> Sentences(std::string_view text) {
  std::vector<Sentence> out;
  size_t start = 0;
  auto flush = [&](size_t end) {
    std::string s = Trim(text.substr(start, end - start));
    if (!s.empty()) out.push_back({s, Chunks(s)});
    start = end;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    bool boundary = false;
    if (c == '.' || c == '!' || c == '?') {
      boundary = i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1]));
    } else if (c == '\n' && i + 1 < text.size() && text[i + 1] == '\n') {
      boundary = true;
    }
    if (boundary) flush(i + 1);
  }
  flush(text.size());
  return out;
}

void Accumulate(const std::vector<std::string>& tokens, std::map<std::string, uint32_t>& counts) {
  for (const auto& t : tokens) ++counts[t];
}

}  // namespace

double TfIdfModel::Idf(const std::string& token) const {
  auto it = doc_frequency.find(token);
  if (it == doc_frequency.end()) return 0.0;
  return std::log(static_cast<double>(doc_count) / (static_cast<double>(it->second) + alpha));
}

std::vector<std::string> ExtractTermsLexical(const PackageDoc& doc) {
  std::vector<std::string> terms;
  std::set<std::string> seen;
  for (auto& chunk : Chunks(doc.text)) {
    if (LooksLikeTerm(chunk) && seen.insert(chunk).second) terms.push_back(chunk);
  }
  return terms;
}

LlmRequest SemanticJudgmentRequest(std::string_view word, std::string_view sentence) {
  LlmRequest req;
  req.system_prompt =
      "You are a software documentation analyst. You decide whether a word in API "
      "documentation carries domain-specific meaning.";
  req.user_prompt = "Synonym Substitution Test\nWord: " + std::string(word) + "\nSentence: " +
                    std::string(sentence) +
                    "\n\nPropose the most plausible synonym for the word and substitute it into "
                    "the sentence. Decide whether the technical meaning of the sentence changes. "
                    "Reply with one line 'SUBSTITUTE: <synonym>' followed by one line that is "
                    "either 'JUDGMENT: CHANGED' or 'JUDGMENT: PRESERVED'.";
  req.temperature = 0.0;
  req.max_tokens = 64;
  return req;
}

std::vector<std::string> ExtractTermsSemantic(const PackageDoc& doc, const LlmClient& client) {
  std::set<std::string> lexical;
  for (const auto& t : ExtractTermsLexical(doc)) lexical.insert(ToLower(t));

  std::vector<std::string> out;
  std::set<std::string> asked;
  for (const Sentence& sentence : Sentences(doc.text)) {
    for (const auto& w : sentence.chunks) {
      if (w.size() < 3 || !std::all_of(w.begin(), w.end(), IsLower)) continue;
      if (Stopwords().count(w) || lexical.count(w) || !asked.insert(w).second) continue;
      std::string reply;
      try {
        reply = client.Complete(SemanticJudgmentRequest(w, sentence.text)).text;
      } catch (const ClientError& e) {
        throw ClientError(e.cause(),
                          "term extraction for '" + doc.path_context + "': " + e.what());
      }
      std::string upper = reply;
      std::transform(upper.begin(), upper.end(), upper.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
      if (upper.find("JUDGMENT: CHANGED") != std::string::npos) out.push_back(w);
    }
  }
  return out;
}

TfIdfModel FitTfidf(const std::vector<PackageDoc>& docs) {
  if (docs.empty()) throw Error(ErrorKind::kEmptyCorpus, "empty corpus: no package documents");
  TfIdfModel model;
  model.doc_count = static_cast<uint32_t>(docs.size());
  for (const auto& doc : docs) {
    std::vector<std::string> tokens = WordTokens(doc.text);
    std::set<std::string> unique(tokens.begin(), tokens.end());
    for (const auto& t : unique) ++model.doc_frequency[t];
  }
  uint32_t index = 0;
  for (const auto& [token, df] : model.doc_frequency) model.vocabulary[token] = index++;
  return model;
}

SparseVector EncodeTfidf(const TfIdfModel& model, std::string_view text) {
  std::vector<std::string> tokens = WordTokens(text);
  SparseVector v;
  if (tokens.empty()) return v;
  std::map<std::string, uint32_t> counts;
  Accumulate(tokens, counts);
  const double total = static_cast<double>(tokens.size());
  for (const auto& [token, n] : counts) {
    auto it = model.vocabulary.find(token);
    if (it == model.vocabulary.end()) continue;
    double w = (n / total) * model.Idf(token);
    if (w != 0.0 && std::isfinite(w)) v[it->second] = w;
  }
  return v;
}

double Cosine(const SparseVector& a, const SparseVector& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [i, w] : a) {
    na += w * w;
    auto it = b.find(i);
    if (it != b.end()) dot += w * it->second;
  }
  for (const auto& [i, w] : b) nb += w * w;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

KnowledgeBase BuildKnowledgeBase(const std::vector<PackageDoc>& docs, const LlmClient* client) {
  for (const auto& doc : docs) {
    if (Trim(doc.path_context).empty() || Trim(doc.text).empty()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "package document '" + doc.path_context + "' has an empty path or text");
    }
  }
  KnowledgeBase kb;
  kb.model = FitTfidf(docs);
  for (const auto& doc : docs) {
    std::vector<std::string> terms = ExtractTermsLexical(doc);
    if (client != nullptr) {
      for (auto& t : ExtractTermsSemantic(doc, *client)) terms.push_back(std::move(t));
    }
    if (terms.empty()) continue;
    SparseVector vec = EncodeTfidf(kb.model, doc.text);
    for (auto& term : terms) {
      kb.entries.push_back({std::move(term), doc.text, doc.path_context, vec});
    }
  }
  return kb;
}

std::vector<PackageDoc> LoadPackageDocs(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<PackageDoc> docs;
  std::error_code ec;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(path)) {
      if (!e.is_regular_file()) continue;
      std::string name = e.path().filename().string();
      if (name.front() == '.') continue;
      files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      std::string name = f.filename().string();
      std::string ext = ToLower(f.extension().string());
      if (ext == ".txt" || ext == ".md") name = name.substr(0, name.size() - ext.size());
      docs.push_back({name, ReadFile(f)});
    }
    return docs;
  }
  std::string content = ReadFile(path);
  try {
    json j = json::parse(content);
    if (!j.is_array()) throw Error(ErrorKind::kParseFailure, "corpus manifest must be a list");
    for (const auto& item : j) {
      docs.push_back({item.at("path_context").get<std::string>(), item.at("text").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseFailure,
                "malformed corpus manifest " + path.string() + ": " + e.what());
  }
  return docs;
}

ordered_json KnowledgeBaseToJson(const KnowledgeBase& kb) {
  ordered_json model;
  model["alpha"] = kb.model.alpha;
  model["log_base"] = "natural";
  model["doc_count"] = kb.model.doc_count;
  model["vocabulary"] = ordered_json::object();
  for (const auto& [t, i] : kb.model.vocabulary) model["vocabulary"][t] = i;
  model["doc_frequency"] = ordered_json::object();
  for (const auto& [t, n] : kb.model.doc_frequency) model["doc_frequency"][t] = n;

  ordered_json entries = ordered_json::array();
  for (const auto& e : kb.entries) {
    ordered_json vec = ordered_json::object();
    for (const auto& [i, w] : e.vector) vec[std::to_string(i)] = w;
    entries.push_back({{"term", e.term},
                       {"documentation", e.documentation},
                       {"path_context", e.path_context},
                       {"vector", std::move(vec)}});
  }
  ordered_json j;
  j["model"] = std::move(model);
  j["entries"] = std::move(entries);
  return j;
}

KnowledgeBase KnowledgeBaseFromJson(const json& j) {
  KnowledgeBase kb;
  try {
    const json& model = j.at("model");
    kb.model.alpha = model.at("alpha").get<double>();
    if (model.value("log_base", std::string("natural")) != "natural") {
      throw Error(ErrorKind::kParseFailure, "unsupported log_base in knowledge base");
    }
    kb.model.doc_count = model.at("doc_count").get<uint32_t>();
    for (const auto& [t, i] : model.at("vocabulary").items()) kb.model.vocabulary[t] = i.get<uint32_t>();
    for (const auto& [t, n] : model.at("doc_frequency").items()) {
      kb.model.doc_frequency[t] = n.get<uint32_t>();
    }
    for (const auto& e : j.at("entries")) {
      KnowledgeEntry entry;
      entry.term = e.at("term").get<std::string>();
      entry.documentation = e.at("documentation").get<std::string>();
      entry.path_context = e.at("path_context").get<std::string>();
      for (const auto& [i, w] : e.at("vector").items()) {
        entry.vector[static_cast<uint32_t>(std::stoul(i))] = w.get<double>();
      }
      kb.entries.push_back(std::move(entry));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseFailure, std::string("malformed knowledge base: ") + e.what());
  } catch (const std::logic_error& e) {
    throw Error(ErrorKind::kParseFailure, std::string("malformed knowledge base vector: ") + e.what());
  }
  if (!(kb.model.alpha > 0.0)) throw Error(ErrorKind::kParseFailure, "knowledge base alpha must be > 0");
  return kb;
}

void SaveKnowledgeBase(const KnowledgeBase& kb, const std::filesystem::path& path) {
  WriteFile(path, KnowledgeBaseToJson(kb).dump(1) + "\n");
}

KnowledgeBase LoadKnowledgeBase(const std::filesystem::path& path) {
  std::string content = ReadFile(path);
  json j;
  try {
    j = json::parse(content);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParseFailure, "malformed knowledge base " + path.string() + ": " + e.what());
  }
  return KnowledgeBaseFromJson(j);
}

}  // namespace expsum
