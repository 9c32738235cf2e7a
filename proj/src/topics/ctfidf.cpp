#include "infospread/topics/ctfidf.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "infospread/common/error.hpp"
#include "infospread/common/text.hpp"

namespace infospread::topics {

namespace {

// scikit-learn's English stop-word list (Glasgow IR group list).
constexpr std::array kStopwords = {
    "a", "about", "above", "across", "after", "afterwards", "again", "against", "all", "almost",
    "alone", "along", "already", "also", "although", "always", "am", "among", "amongst", "amoungst",
    "amount", "an", "and", "another", "any", "anyhow", "anyone", "anything", "anyway", "anywhere",
    "are", "around", "as", "at", "back", "be", "became", "because", "become", "becomes", "becoming",
    "been", "before", "beforehand", "behind", "being", "below", "beside", "besides", "between",
    "beyond", "bill", "both", "bottom", "but", "by", "call", "can", "cannot", "cant", "co", "con",
    "could", "couldnt", "cry", "de", "describe", "detail", "do", "done", "down", "due", "during",
    "each", "eg", "eight", "either", "eleven", "else", "elsewhere", "empty", "enough", "etc", "even",
    "ever", "every", "everyone", "everything", "everywhere", "except", "few", "fifteen", "fifty",
    "fill", "find", "fire", "first", "five", "for", "former", "formerly", "forty", "found", "four",
    "from", "front", "full", "further", "get", "give", "go", "had", "has", "hasnt", "have", "he",
    "hence", "her", "here", "hereafter", "hereby", "herein", "hereupon", "hers", "herself", "him",
    "himself", "his", "how", "however", "hundred", "i", "ie", "if", "in", "inc", "indeed", "interest",
    "into", "is", "it", "its", "itself", "keep", "last", "latter", "latterly", "least", "less", "ltd",
    "made", "many", "may", "me", "meanwhile", "might", "mill", "mine", "more", "moreover", "most",
    "mostly", "move", "much", "must", "my", "myself", "name", "namely", "neither", "never",
    "nevertheless", "next", "nine", "no", "nobody", "none", "noone", "nor", "not", "nothing", "now",
    "nowhere", "of", "off", "often", "on", "once", "one", "only", "onto", "or", "other", "others",
    "otherwise", "our", "ours", "ourselves", "out", "over", "own", "part", "per", "perhaps", "please",
    "put", "rather", "re", "same", "see", "seem", "seemed", "seeming", "seems", "serious", "several",
    "she", "should", "show", "side", "since", "sincere", "six", "sixty", "so", "some", "somehow",
    "someone", "something", "sometime", "sometimes", "somewhere", "still", "such", "system", "take",
    "ten", "than", "that", "the", "their", "them", "themselves", "then", "thence", "there",
    "thereafter", "thereby", "therefore", "therein", "thereupon", "these", "they", "thick", "thin",
    "third", "this", "those", "though", "three", "through", "throughout", "thru", "thus", "to",
    "together", "too", "top", "toward", "towards", "twelve", "twenty", "two", "un", "under", "until",
    "up", "upon", "us", "very", "via", "was", "we", "well", "were", "what", "whatever", "when",
    "whence", "whenever", "where", "whereafter", "whereas", "whereby", "wherein", "whereupon",
    "wherever", "whether", "which", "while", "whither", "who", "whoever", "whole", "whom", "whose",
    "why", "will", "with", "within", "without", "would", "yet", "you", "your", "yours", "yourself",
    "yourselves"
};

}  // namespace

bool is_stopword(std::string_view word) {
    return std::binary_search(kStopwords.begin(), kStopwords.end(), word,
                              [](std::string_view a, std::string_view b) { return a < b; });
}

Tokens tokenize_claim(std::string_view text) {
    Tokens out;
    for (auto& tok : text::letter_tokens(text)) {
        if (!is_stopword(tok)) {
            out.push_back(std::move(tok));
        }
    }
    return out;
}

CtfidfResult ctfidf(std::span<const std::vector<Tokens>> docs_by_cluster, std::size_t top_n) {
    const std::size_t k = docs_by_cluster.size();
    if (k == 0) {
        throw PreconditionError("ctfidf: no clusters");
    }
    std::vector<std::map<std::string, double>> tf(k);
    std::map<std::string, double> freq;
    double tokens_total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        if (docs_by_cluster[c].empty()) {
            throw PreconditionError("ctfidf: cluster " + std::to_string(c) + " has no documents");
        }
        for (const auto& doc : docs_by_cluster[c]) {
            for (const auto& t : doc) {
                tf[c][t] += 1.0;
                freq[t] += 1.0;
                tokens_total += 1.0;
            }
        }
    }
    if (freq.empty()) {
        throw NumericalError("ctfidf: empty vocabulary");
    }
    const double avg = tokens_total / static_cast<double>(k);

    CtfidfResult r;
    std::map<std::string, Eigen::Index> column;
    for (const auto& [t, _] : freq) {
        column.emplace(t, static_cast<Eigen::Index>(r.vocabulary.size()));
        r.vocabulary.push_back(t);
    }
    r.scores = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(r.vocabulary.size()));
    for (std::size_t c = 0; c < k; ++c) {
        for (const auto& [t, count] : tf[c]) {
            r.scores(static_cast<Eigen::Index>(c), column.at(t)) = count * std::log(1.0 + avg / freq.at(t));
        }
    }
    for (std::size_t c = 0; c < k; ++c) {
        std::vector<ScoredWord> words;
        for (std::size_t v = 0; v < r.vocabulary.size(); ++v) {
            const double s = r.scores(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(v));
            if (s > 0.0) {
                words.push_back({r.vocabulary[v], s});
            }
        }
        // Vocabulary order is lexicographic; stable sort keeps it for ties.
        std::stable_sort(words.begin(), words.end(),
                         [](const ScoredWord& a, const ScoredWord& b) { return a.score > b.score; });
        if (words.size() > top_n) {
            words.resize(top_n);
        }
        r.top_words.push_back(std::move(words));
    }
    return r;
}

Eigen::MatrixXd cluster_similarity(const Eigen::MatrixXd& scores) {
    const Eigen::Index k = scores.rows();
    Eigen::VectorXd norms(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        norms(i) = scores.row(i).norm();
        if (!(norms(i) > 0.0)) {
            throw NumericalError("cluster_similarity: cluster " + std::to_string(i) + " has an all-zero row");
        }
    }
    Eigen::MatrixXd sim(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        sim(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < k; ++j) {
            const double c = scores.row(i).dot(scores.row(j)) / (norms(i) * norms(j));
            sim(i, j) = c;
            sim(j, i) = c;
        }
    }
    return sim;
}

}  // namespace infospread::topics
