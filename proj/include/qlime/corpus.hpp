#pragma once

// Text ingestion and featurization: preprocessing, vocabulary construction,
// binary presence/absence vectorization, CSV dataset loading, and a seeded
// synthetic corpus generator for desk-scale benchmarks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qlime/errors.hpp"
#include "qlime/rng.hpp"
#include "qlime/stopwords.hpp"
#include "qlime/types.hpp"

namespace qlime {

struct Document {
    std::string text;
    int label = 0;  // 0 = negative, 1 = positive
};

// Ordered token -> feature-index map. Tokens are distinct, lowercase,
// length >= 2, and stored in lexicographic order so feature indices are
// reproducible.
struct Vocabulary {
    std::vector<std::string> tokens;
    std::size_t max_features = 0;
    bool stopwords_removed = false;
    std::unordered_map<std::string, int> index;

    int size() const { return static_cast<int>(tokens.size()); }
    int index_of(const std::string& token) const {
        auto it = index.find(token);
        return it == index.end() ? -1 : it->second;
    }
};

inline Vocabulary make_vocabulary(std::vector<std::string> tokens, std::size_t max_features,
                                  bool stopwords_removed) {
    Vocabulary v;
    v.tokens = std::move(tokens);
    v.max_features = max_features;
    v.stopwords_removed = stopwords_removed;
    for (std::size_t i = 0; i < v.tokens.size(); ++i) {
        v.index.emplace(v.tokens[i], static_cast<int>(i));
    }
    return v;
}

struct LabeledCorpus {
    std::vector<Document> documents;
    std::vector<std::size_t> train_indices;  // disjoint from test, union covers all
    std::vector<std::size_t> test_indices;
};

using StopwordSet = std::unordered_set<std::string>;

inline const StopwordSet& default_stopwords() {
    static const StopwordSet set = [] {
        StopwordSet s;
        s.reserve(kDefaultStopwords.size());
        for (auto w : kDefaultStopwords) s.emplace(w);
        return s;
    }();
    return set;
}

// Stopword file format: UTF-8, one token per line, '#' starts a comment line.
inline StopwordSet load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open stopword file: " + path);
    StopwordSet set;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        set.insert(line);
    }
    return set;
}

namespace detail {

inline bool is_token_char(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

inline double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// Seeded shuffle split with |train| = ceil(0.8 * n).
inline void split_80_20(std::size_t n, Rng& rng, std::vector<std::size_t>& train,
                        std::vector<std::size_t>& test) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    rng.shuffle(order);
    const std::size_t n_train = (4 * n + 4) / 5;
    train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.assign(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
}

}  // namespace detail

// Deletes HTML tags (substrings matching <...>), lowercases, and splits into
// maximal runs of >= 2 alphanumeric characters; optionally drops stopwords.
inline std::vector<std::string> preprocess(const std::string& text, bool remove_stopwords,
                                           const StopwordSet& stopwords = default_stopwords()) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '<') {
            const std::size_t close = text.find('>', i + 1);
            if (close != std::string::npos) {
                i = close;
                continue;
            }
        }
        char c = text[i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        cleaned.push_back(c);
    }

    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (start < cleaned.size()) {
        if (!detail::is_token_char(cleaned[start])) {
            ++start;
            continue;
        }
        std::size_t end = start;
        while (end < cleaned.size() && detail::is_token_char(cleaned[end])) ++end;
        if (end - start >= 2) {
            std::string token = cleaned.substr(start, end - start);
            if (!remove_stopwords || stopwords.find(token) == stopwords.end()) {
                tokens.push_back(std::move(token));
            }
        }
        start = end;
    }
    return tokens;
}

// Ranks candidate tokens by document frequency in the train split (ties
// broken lexicographically), keeps the top max_features, and indexes them in
// lexicographic order.
inline Vocabulary build_vocabulary(const LabeledCorpus& corpus, std::size_t max_features,
                                   bool remove_stopwords,
                                   const StopwordSet& stopwords = default_stopwords()) {
    if (max_features < 1) throw std::invalid_argument("max_features must be >= 1");
    if (corpus.train_indices.empty()) throw DataError("corpus has an empty train split");

    std::unordered_map<std::string, std::size_t> doc_freq;
    for (std::size_t idx : corpus.train_indices) {
        const auto tokens = preprocess(corpus.documents[idx].text, remove_stopwords, stopwords);
        std::unordered_set<std::string> seen(tokens.begin(), tokens.end());
        for (const auto& t : seen) ++doc_freq[t];
    }

    std::vector<std::pair<std::string, std::size_t>> ranked(doc_freq.begin(), doc_freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > max_features) ranked.resize(max_features);

    std::vector<std::string> tokens;
    tokens.reserve(ranked.size());
    for (auto& [token, freq] : ranked) tokens.push_back(std::move(token));
    std::sort(tokens.begin(), tokens.end());
    return make_vocabulary(std::move(tokens), max_features, remove_stopwords);
}

// bit i = 1 iff vocab.tokens[i] occurs in the token list.
inline BitVector vectorize(const std::vector<std::string>& tokens, const Vocabulary& vocab) {
    BitVector bits(vocab.tokens.size(), 0);
    for (const auto& t : tokens) {
        const int i = vocab.index_of(t);
        if (i >= 0) bits[static_cast<std::size_t>(i)] = 1;
    }
    return bits;
}

namespace csv {

// Minimal RFC-4180 reader: quoted fields may contain commas, escaped quotes
// ("") and newlines. Returns false when the stream is exhausted.
inline bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    if (in.peek() == std::char_traits<char>::eof()) return false;
    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    for (;;) {
        const int c = in.get();
        if (c == std::char_traits<char>::eof()) {
            if (in_quotes) throw Error("unterminated quoted field");
            fields.push_back(std::move(field));
            return true;
        }
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field.push_back('"');
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(static_cast<char>(c));
            }
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || was_quoted) throw Error("stray quote in field");
                in_quotes = true;
                was_quoted = true;
                break;
            case ',':
                fields.push_back(std::move(field));
                field.clear();
                was_quoted = false;
                break;
            case '\r':
                if (in.peek() == '\n') in.get();
                [[fallthrough]];
            case '\n':
                fields.push_back(std::move(field));
                return true;
            default:
                if (was_quoted) throw Error("unexpected character after closing quote");
                field.push_back(static_cast<char>(c));
        }
    }
}

inline void write_field(std::ostream& out, const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') out << '"';
        out << c;
    }
    out << '"';
}

}  // namespace csv

// Loads a `text,label` CSV. When `limit` is set, keeps a seeded uniform
// random subset of that size. Always applies a seeded 80/20 shuffle split.
inline LabeledCorpus load_dataset(const std::string& path,
                                  std::optional<std::size_t> limit, std::uint64_t seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open dataset: " + path);

    std::vector<std::string> fields;
    std::size_t record = 0;
    std::vector<Document> docs;
    try {
        while (csv::read_record(in, fields)) {
            ++record;
            if (record == 1) {
                if (fields.size() != 2 || fields[0] != "text" || fields[1] != "label") {
                    throw IngestionError(record, "expected header \"text,label\"");
                }
                continue;
            }
            if (fields.size() != 2) {
                throw IngestionError(record, "expected 2 fields, found " +
                                                 std::to_string(fields.size()));
            }
            if (fields[1] != "0" && fields[1] != "1") {
                throw IngestionError(record, "label must be 0 or 1, found \"" + fields[1] + "\"");
            }
            docs.push_back({std::move(fields[0]), fields[1] == "1" ? 1 : 0});
        }
    } catch (const IngestionError&) {
        throw;
    } catch (const Error& e) {
        throw IngestionError(record + 1, e.what());
    }

    Rng rng(seed);
    if (limit.has_value() && *limit < docs.size()) {
        std::vector<std::size_t> order(docs.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        rng.shuffle(order);
        order.resize(*limit);
        std::sort(order.begin(), order.end());  // keep file order within the subset
        std::vector<Document> subset;
        subset.reserve(order.size());
        for (std::size_t i : order) subset.push_back(std::move(docs[i]));
        docs = std::move(subset);
    }

    LabeledCorpus corpus;
    corpus.documents = std::move(docs);
    detail::split_80_20(corpus.documents.size(), rng, corpus.train_indices, corpus.test_indices);
    return corpus;
}

inline void write_dataset_csv(const std::vector<Document>& docs, std::ostream& out) {
    out << "text,label\n";
    for (const auto& d : docs) {
        csv::write_field(out, d.text);
        out << ',' << d.label << '\n';
    }
}

// Synthetic stand-in for a review corpus: vocab_size tokens named tok00,
// tok01, ...; each document contains each token independently with
// probability 1/2 and its label is Bernoulli(sigma(w.x + b0)) for the
// planted weights, with b0 = -sum(w)/2 so classes stay roughly balanced.
inline LabeledCorpus synth_corpus(int n_docs, int vocab_size,
                                  const std::vector<double>& planted_weights, std::uint64_t seed) {
    if (vocab_size < 1 || vocab_size > kMaxQubits) {
        throw std::invalid_argument("vocab_size must be in [1, " + std::to_string(kMaxQubits) +
                                    "]");
    }
    if (static_cast<std::size_t>(vocab_size) != planted_weights.size()) {
        throw std::invalid_argument("planted_weights length must equal vocab_size");
    }
    if (n_docs < 1) throw std::invalid_argument("n_docs must be >= 1");

    std::vector<std::string> tokens(static_cast<std::size_t>(vocab_size));
    for (int i = 0; i < vocab_size; ++i) {
        tokens[static_cast<std::size_t>(i)] =
            "tok" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    }

    double weight_sum = 0.0;
    for (double w : planted_weights) weight_sum += w;
    const double bias0 = -weight_sum / 2.0;

    Rng rng(seed);
    LabeledCorpus corpus;
    corpus.documents.reserve(static_cast<std::size_t>(n_docs));
    for (int d = 0; d < n_docs; ++d) {
        std::string text;
        double logit = bias0;
        for (int i = 0; i < vocab_size; ++i) {
            if (!rng.bernoulli(0.5)) continue;
            if (!text.empty()) text.push_back(' ');
            text += tokens[static_cast<std::size_t>(i)];
            logit += planted_weights[static_cast<std::size_t>(i)];
        }
        const int label = rng.bernoulli(detail::logistic(logit)) ? 1 : 0;
        corpus.documents.push_back({std::move(text), label});
    }
    detail::split_80_20(corpus.documents.size(), rng, corpus.train_indices, corpus.test_indices);
    return corpus;
}

}  // namespace qlime
