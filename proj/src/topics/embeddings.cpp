#include "infospread/topics/embeddings.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "infospread/common/csv.hpp"
#include "infospread/common/error.hpp"
#include "infospread/common/files.hpp"
#include "infospread/common/text.hpp"

namespace infospread::topics {

EmbeddingSet EmbeddingSet::from_map(const std::map<std::string, std::vector<double>>& vectors) {
    EmbeddingSet set;
    if (vectors.empty()) {
        return set;
    }
    const std::size_t d = vectors.begin()->second.size();
    if (d == 0) {
        throw PreconditionError("embeddings: zero-length vector for '" + vectors.begin()->first + "'");
    }
    set.vectors_.resize(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(d));
    Eigen::Index row = 0;
    for (const auto& [id, v] : vectors) {
        if (v.size() != d) {
            throw PreconditionError("embeddings: '" + id + "' has dimension " + std::to_string(v.size()) +
                                    ", expected " + std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            if (!std::isfinite(v[j])) {
                throw PreconditionError("embeddings: non-finite entry in '" + id + "'");
            }
            set.vectors_(row, static_cast<Eigen::Index>(j)) = v[j];
        }
        set.ids_.push_back(id);
        ++row;
    }
    return set;
}

std::optional<std::size_t> EmbeddingSet::index_of(std::string_view id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - ids_.begin());
}

EmbeddingSet EmbeddingSet::subset(std::span<const std::string> ids) const {
    std::map<std::string, std::vector<double>> picked;
    for (const auto& id : ids) {
        const auto idx = index_of(id);
        if (!idx) {
            throw PreconditionError("embeddings: no vector for id '" + id + "'");
        }
        const auto r = vectors_.row(static_cast<Eigen::Index>(*idx));
        std::vector<double>& v = picked[id];
        v.resize(dimension());
        for (std::size_t j = 0; j < dimension(); ++j) {
            v[j] = r(static_cast<Eigen::Index>(j));
        }
    }
    return from_map(picked);
}

EmbeddingSet EmbeddingSet::normalized() const {
    EmbeddingSet out = *this;
    for (Eigen::Index i = 0; i < out.vectors_.rows(); ++i) {
        const double norm = out.vectors_.row(i).norm();
        if (!(norm > 0.0)) {
            throw NumericalError("embeddings: zero-norm vector for '" + ids_[static_cast<std::size_t>(i)] + "'");
        }
        out.vectors_.row(i) /= norm;
    }
    return out;
}

EmbeddingSet parse_embeddings_jsonl(std::string_view content) {
    std::map<std::string, std::vector<double>> vectors;
    std::istringstream in{std::string(content)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) {
            continue;
        }
        try {
            const auto j = nlohmann::json::parse(line);
            std::string id = j.at("id").is_string() ? j.at("id").get<std::string>() : j.at("id").dump();
            auto v = j.at("vector").get<std::vector<double>>();
            if (!vectors.emplace(std::move(id), std::move(v)).second) {
                throw FormatError("duplicate id");
            }
        } catch (const nlohmann::json::exception& e) {
            throw FormatError("embeddings line " + std::to_string(line_no) + ": " + e.what());
        } catch (const FormatError& e) {
            throw FormatError("embeddings line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return EmbeddingSet::from_map(vectors);
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
    try {
        return parse_embeddings_jsonl(files::read_text(path));
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

std::string to_jsonl(const EmbeddingSet& set) {
    std::string out;
    for (std::size_t i = 0; i < set.size(); ++i) {
        out += "{\"id\":" + nlohmann::json(set.ids()[i]).dump() + ",\"vector\":[";
        for (std::size_t j = 0; j < set.dimension(); ++j) {
            if (j > 0) {
                out.push_back(',');
            }
            out += csv::real(set.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        out += "]}\n";
    }
    return out;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Character n-grams over code points of " text ".
std::vector<std::string> char_ngrams(const std::string& utf8) {
    std::vector<std::string> cps;
    for (std::size_t i = 0; i < utf8.size();) {
        std::size_t len = 1;
        const auto c = static_cast<unsigned char>(utf8[i]);
        if (c >= 0xF0) {
            len = 4;
        } else if (c >= 0xE0) {
            len = 3;
        } else if (c >= 0xC0) {
            len = 2;
        }
        cps.push_back(utf8.substr(i, len));
        i += len;
    }
    std::vector<std::string> grams;
    for (std::size_t n = 3; n <= 5; ++n) {
        for (std::size_t i = 0; i + n <= cps.size(); ++i) {
            std::string g;
            for (std::size_t j = 0; j < n; ++j) {
                g += cps[i + j];
            }
            grams.push_back(std::move(g));
        }
    }
    return grams;
}

}  // namespace

EmbeddingSet LexicalEmbedder::embed(const std::map<std::string, std::string>& texts) const {
    if (dimension_ == 0) {
        throw PreconditionError("LexicalEmbedder: dimension must be positive");
    }
    std::vector<std::unordered_map<std::size_t, double>> tf;
    std::vector<double> df(dimension_, 0.0);
    for (const auto& [id, t] : texts) {
        std::string norm;
        for (const auto& tok : text::letter_tokens(t)) {
            norm += " " + tok;
        }
        norm += " ";
        std::unordered_map<std::size_t, double> counts;
        for (const auto& g : char_ngrams(norm)) {
            counts[fnv1a(g) % dimension_] += 1.0;
        }
        for (const auto& [bucket, _] : counts) {
            df[bucket] += 1.0;
        }
        tf.push_back(std::move(counts));
    }
    const auto n = static_cast<double>(texts.size());
    std::map<std::string, std::vector<double>> vectors;
    std::size_t row = 0;
    for (const auto& [id, t] : texts) {
        std::vector<double> v(dimension_, 0.0);
        double norm2 = 0.0;
        for (const auto& [bucket, count] : tf[row]) {
            const double w = count * (std::log((1.0 + n) / (1.0 + df[bucket])) + 1.0);
            v[bucket] = w;
            norm2 += w * w;
        }
        if (norm2 > 0.0) {
            const double inv = 1.0 / std::sqrt(norm2);
            for (double& x : v) {
                x *= inv;
            }
        } else {
            // Text with no letters: a fixed unit vector keeps the row usable.
            v[0] = 1.0;
        }
        vectors.emplace(id, std::move(v));
        ++row;
    }
    return EmbeddingSet::from_map(vectors);
}

}  // namespace infospread::topics
