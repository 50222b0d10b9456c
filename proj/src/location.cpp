#include "apisynth/location.hpp"

#include <sstream>
#include <stdexcept>

namespace apisynth {

std::string Label::render() const {
    switch (kind) {
        case Kind::In: return "in";
        case Kind::Out: return "out";
        case Kind::Elem: return "0";
        case Kind::Field: return name;
    }
    return {};
}

Location Location::child(Label l) const {
    Location c = *this;
    c.path.push_back(std::move(l));
    return c;
}

std::string Location::render() const {
    std::string out = head;
    for (const auto& l : path) {
        out += '.';
        out += l.render();
    }
    return out;
}

namespace {

std::vector<std::string> split_dots(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == '.') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    for (const auto& p : parts)
        if (p.empty()) throw std::runtime_error("malformed location: " + text);
    return parts;
}

Location from_parts(const std::vector<std::string>& parts, size_t head_len,
                    const std::string& text) {
    Location loc;
    loc.head = parts[0];
    for (size_t i = 1; i < head_len; ++i) loc.head += "." + parts[i];
    for (size_t i = head_len; i < parts.size(); ++i) {
        const std::string& p = parts[i];
        if (p == "in") loc.path.push_back(Label::in());
        else if (p == "out") loc.path.push_back(Label::out());
        else if (p == "0") loc.path.push_back(Label::elem());
        else loc.path.push_back(Label::field(p));
    }
    (void)text;
    return loc;
}

} // namespace

Location parse_location(const std::string& text) {
    if (text.empty()) throw std::runtime_error("empty location");
    auto parts = split_dots(text);
    return from_parts(parts, 1, text);
}

Location parse_location(const std::string& text,
                        const std::vector<std::string>& known_heads) {
    if (text.empty()) throw std::runtime_error("empty location");
    auto parts = split_dots(text);
    for (size_t len = parts.size(); len >= 1; --len) {
        std::string head = parts[0];
        for (size_t i = 1; i < len; ++i) head += "." + parts[i];
        for (const auto& k : known_heads)
            if (k == head) return from_parts(parts, len, text);
    }
    return from_parts(parts, 1, text);
}

} // namespace apisynth
