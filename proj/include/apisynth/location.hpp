#pragma once

#include <string>
#include <vector>

namespace apisynth {

// One step of a location path. The reserved steps (method input, method
// output, array element) live in their own namespace and can never collide
// with a spec field name.
struct Label {
    enum class Kind { Field, In, Out, Elem };
    Kind kind = Kind::Field;
    std::string name; // only for Kind::Field

    static Label field(std::string n) { return {Kind::Field, std::move(n)}; }
    static Label in() { return {Kind::In, {}}; }
    static Label out() { return {Kind::Out, {}}; }
    static Label elem() { return {Kind::Elem, {}}; }

    bool operator==(const Label&) const = default;
    std::string render() const;
};

// A position in the API surface: an object or method name plus a path of
// labels, e.g. Channel.id or u_info.in.user or c_members.out.0.
struct Location {
    std::string head;
    std::vector<Label> path;

    Location() = default;
    Location(std::string h, std::vector<Label> p) : head(std::move(h)), path(std::move(p)) {}

    Location child(Label l) const;
    std::string render() const;

    bool operator==(const Location&) const = default;
    bool operator<(const Location& o) const { return render() < o.render(); }
};

// Parses the textual form used in queries and annotation files. "in"/"out"/"0"
// path segments denote the reserved labels. Throws std::runtime_error on
// malformed input.
Location parse_location(const std::string& text);

// Heads themselves may contain dots (method names like users.profile.get), so
// when a set of known heads is available the longest dotted prefix naming one
// of them wins; otherwise the first segment is the head.
Location parse_location(const std::string& text,
                        const std::vector<std::string>& known_heads);

} // namespace apisynth
