#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace test_support {

/// Small XML well-formedness check: balanced tags, quoted attributes, valid
/// entities, one root element. Returns an empty string when the document is
/// well formed, else a description of the first problem.
inline std::string xml_problem(std::string_view doc) {
    std::vector<std::string> stack;
    std::size_t roots = 0;
    std::size_t i = 0;
    auto is_name = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':'; };
    while (i < doc.size()) {
        if (doc[i] == '&') {
            const auto semi = doc.find(';', i);
            if (semi == std::string_view::npos) {
                return "unterminated entity";
            }
            const auto ent = doc.substr(i + 1, semi - i - 1);
            if (ent != "amp" && ent != "lt" && ent != "gt" && ent != "quot" && ent != "apos" && !ent.starts_with('#')) {
                return "unknown entity &" + std::string(ent) + ";";
            }
            i = semi + 1;
            continue;
        }
        if (doc[i] != '<') {
            if (stack.empty() && !std::isspace(static_cast<unsigned char>(doc[i]))) {
                return "text outside the root element";
            }
            ++i;
            continue;
        }
        if (doc.substr(i, 2) == "<?") {
            const auto end = doc.find("?>", i);
            if (end == std::string_view::npos) {
                return "unterminated processing instruction";
            }
            i = end + 2;
            continue;
        }
        if (doc.substr(i, 4) == "<!--") {
            const auto end = doc.find("-->", i);
            if (end == std::string_view::npos) {
                return "unterminated comment";
            }
            i = end + 3;
            continue;
        }
        if (doc.substr(i, 2) == "</") {
            std::size_t j = i + 2;
            while (j < doc.size() && is_name(doc[j])) {
                ++j;
            }
            const std::string name(doc.substr(i + 2, j - i - 2));
            while (j < doc.size() && std::isspace(static_cast<unsigned char>(doc[j]))) {
                ++j;
            }
            if (j >= doc.size() || doc[j] != '>') {
                return "malformed end tag </" + name;
            }
            if (stack.empty() || stack.back() != name) {
                return "mismatched end tag </" + name + ">";
            }
            stack.pop_back();
            i = j + 1;
            continue;
        }
        // Start tag.
        std::size_t j = i + 1;
        while (j < doc.size() && is_name(doc[j])) {
            ++j;
        }
        const std::string name(doc.substr(i + 1, j - i - 1));
        if (name.empty()) {
            return "empty tag name";
        }
        if (stack.empty() && ++roots > 1) {
            return "more than one root element";
        }
        std::vector<std::string> attrs;
        for (;;) {
            while (j < doc.size() && std::isspace(static_cast<unsigned char>(doc[j]))) {
                ++j;
            }
            if (j >= doc.size()) {
                return "unterminated tag <" + name;
            }
            if (doc[j] == '>' || doc.substr(j, 2) == "/>") {
                break;
            }
            const std::size_t a = j;
            while (j < doc.size() && is_name(doc[j])) {
                ++j;
            }
            const std::string attr(doc.substr(a, j - a));
            if (attr.empty() || j + 1 >= doc.size() || doc[j] != '=' || (doc[j + 1] != '"' && doc[j + 1] != '\'')) {
                return "malformed attribute in <" + name + ">";
            }
            for (const auto& seen : attrs) {
                if (seen == attr) {
                    return "duplicate attribute " + attr + " in <" + name + ">";
                }
            }
            attrs.push_back(attr);
            const char q = doc[j + 1];
            const auto close = doc.find(q, j + 2);
            if (close == std::string_view::npos) {
                return "unterminated attribute value";
            }
            if (doc.substr(j + 2, close - j - 2).find('<') != std::string_view::npos) {
                return "'<' in attribute value";
            }
            j = close + 1;
        }
        if (doc[j] == '>') {
            stack.push_back(name);
            i = j + 1;
        } else {
            i = j + 2;
        }
    }
    if (!stack.empty()) {
        return "unclosed element <" + stack.back() + ">";
    }
    if (roots != 1) {
        return "no root element";
    }
    return {};
}

}  // namespace test_support
