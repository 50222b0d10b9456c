#include "apisynth/spec_load.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace apisynth {

namespace {

void warn(LoadReport* report, const std::string& msg) {
    if (report) report->warnings.push_back(msg);
}

// --- simplified dialect ----------------------------------------------------

SynTypePtr parse_dialect_type(const std::string& text,
                              const std::set<std::string>& object_names);

SynTypePtr parse_dialect_type(const std::string& text,
                              const std::set<std::string>& object_names) {
    if (text.size() >= 2 && text.front() == '[' && text.back() == ']')
        return SyntacticType::array(
            parse_dialect_type(text.substr(1, text.size() - 2), object_names));
    if (text == "String") return SyntacticType::prim();
    if (text == "Integer") return SyntacticType::prim(SyntacticType::PrimTag::Integer);
    if (text == "Number") return SyntacticType::prim(SyntacticType::PrimTag::Number);
    if (text == "Boolean") return SyntacticType::prim(SyntacticType::PrimTag::Boolean);
    if (object_names.count(text)) return SyntacticType::object(text);
    throw LoadError("dangling type reference '" + text + "'");
}

SynTypePtr parse_dialect_record(const nlohmann::json& j,
                                const std::set<std::string>& object_names) {
    if (!j.is_object()) throw LoadError("expected an object for a record type");
    std::vector<SynField> fields;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string label = it.key();
        bool optional = false;
        if (!label.empty() && label[0] == '?') {
            optional = true;
            label = label.substr(1);
        }
        if (!it.value().is_string())
            throw LoadError("field '" + label + "': expected a type string");
        fields.push_back({label, optional,
                          parse_dialect_type(it.value().get<std::string>(), object_names)});
    }
    return SyntacticType::record(std::move(fields));
}

Library load_dialect(const nlohmann::json& doc) {
    Library lib;
    std::set<std::string> object_names;
    if (doc.contains("objects"))
        for (auto it = doc["objects"].begin(); it != doc["objects"].end(); ++it)
            object_names.insert(it.key());
    if (doc.contains("objects"))
        for (auto it = doc["objects"].begin(); it != doc["objects"].end(); ++it)
            lib.objects[it.key()] = parse_dialect_record(it.value(), object_names);
    if (doc.contains("methods")) {
        for (auto it = doc["methods"].begin(); it != doc["methods"].end(); ++it) {
            const std::string& name = it.key();
            if (lib.objects.count(name))
                throw LoadError("duplicate name '" + name + "' (object and method)");
            const auto& m = it.value();
            if (!m.is_object() || !m.contains("in") || !m.contains("out"))
                throw LoadError("method '" + name + "': expected {\"in\": ..., \"out\": ...}");
            MethodSig sig;
            sig.input = parse_dialect_record(m["in"], object_names);
            if (!m["out"].is_string())
                throw LoadError("method '" + name + "': expected a type string for 'out'");
            sig.output = parse_dialect_type(m["out"].get<std::string>(), object_names);
            lib.methods[name] = sig;
        }
    }
    return lib;
}

// --- OpenAPI v2/v3 subset ---------------------------------------------------

struct OpenApiCtx {
    const nlohmann::json* schemas = nullptr; // definitions or components.schemas
    std::set<std::string> record_names;
    std::map<std::string, const nlohmann::json*> alias_schemas; // named non-records
    LoadReport* report;
};

std::string ref_target(const std::string& ref) {
    auto pos = ref.find_last_of('/');
    return pos == std::string::npos ? ref : ref.substr(pos + 1);
}

SynTypePtr resolve_schema(const OpenApiCtx& ctx, const nlohmann::json& schema, int depth);

SynTypePtr resolve_named(const OpenApiCtx& ctx, const std::string& name, int depth) {
    if (ctx.record_names.count(name)) return SyntacticType::object(name);
    auto it = ctx.alias_schemas.find(name);
    if (it == ctx.alias_schemas.end())
        throw LoadError("dangling schema reference '" + name + "'");
    return resolve_schema(ctx, *it->second, depth + 1);
}

SynTypePtr resolve_schema(const OpenApiCtx& ctx, const nlohmann::json& schema, int depth) {
    if (depth > 32) throw LoadError("schema nesting too deep (cyclic alias?)");
    if (schema.contains("$ref"))
        return resolve_named(ctx, ref_target(schema["$ref"].get<std::string>()), depth);
    std::string type = schema.value("type", "");
    if (type == "array") {
        if (!schema.contains("items")) {
            warn(ctx.report, "array schema without items; treating elements as strings");
            return SyntacticType::array(SyntacticType::prim());
        }
        return SyntacticType::array(resolve_schema(ctx, schema["items"], depth + 1));
    }
    if (type == "object" || schema.contains("properties")) {
        std::set<std::string> required;
        if (schema.contains("required"))
            for (const auto& r : schema["required"]) required.insert(r.get<std::string>());
        std::vector<SynField> fields;
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end();
                 ++it)
                fields.push_back({it.key(), !required.count(it.key()),
                                  resolve_schema(ctx, it.value(), depth + 1)});
        return SyntacticType::record(std::move(fields));
    }
    if (type == "string" || type.empty()) {
        if (type.empty()) warn(ctx.report, "schema without a type; treating as string");
        return SyntacticType::prim();
    }
    if (type == "integer") return SyntacticType::prim(SyntacticType::PrimTag::Integer);
    if (type == "number") return SyntacticType::prim(SyntacticType::PrimTag::Number);
    if (type == "boolean") return SyntacticType::prim(SyntacticType::PrimTag::Boolean);
    warn(ctx.report, "unsupported schema type '" + type + "'; treating as string");
    return SyntacticType::prim();
}

Library load_openapi(const nlohmann::json& doc, LoadReport* report) {
    Library lib;
    OpenApiCtx ctx;
    ctx.report = report;
    static const nlohmann::json empty = nlohmann::json::object();
    if (doc.contains("definitions")) ctx.schemas = &doc["definitions"];
    else if (doc.contains("components") && doc["components"].contains("schemas"))
        ctx.schemas = &doc["components"]["schemas"];
    else ctx.schemas = &empty;

    for (auto it = ctx.schemas->begin(); it != ctx.schemas->end(); ++it) {
        const auto& s = it.value();
        bool record_like = s.value("type", "") == "object" || s.contains("properties");
        if (record_like) ctx.record_names.insert(it.key());
        else ctx.alias_schemas[it.key()] = &it.value();
    }
    for (auto it = ctx.schemas->begin(); it != ctx.schemas->end(); ++it)
        if (ctx.record_names.count(it.key()))
            lib.objects[it.key()] = resolve_schema(ctx, it.value(), 0);

    if (!doc.contains("paths")) return lib;
    for (auto pit = doc["paths"].begin(); pit != doc["paths"].end(); ++pit) {
        for (auto oit = pit.value().begin(); oit != pit.value().end(); ++oit) {
            static const std::set<std::string> verbs = {"get", "post", "put", "delete",
                                                        "patch"};
            if (!verbs.count(oit.key())) continue;
            const auto& op = oit.value();
            std::string name = op.value("operationId", "");
            if (name.empty()) {
                name = pit.key() + "_" + oit.key();
                std::transform(name.begin() + pit.key().size(), name.end(),
                               name.begin() + pit.key().size(), ::toupper);
            }
            if (lib.methods.count(name)) throw LoadError("duplicate method name '" + name + "'");
            if (lib.objects.count(name))
                throw LoadError("duplicate name '" + name + "' (object and method)");

            std::vector<SynField> args;
            if (op.contains("parameters")) {
                for (const auto& prm : op["parameters"]) {
                    std::string pname = prm.value("name", "");
                    if (pname.empty()) {
                        warn(report, name + ": unnamed parameter skipped");
                        continue;
                    }
                    bool required = prm.value("required", false);
                    SynTypePtr pt;
                    if (prm.contains("schema")) pt = resolve_schema(ctx, prm["schema"], 0);
                    else if (prm.contains("type")) pt = resolve_schema(ctx, prm, 0);
                    else pt = SyntacticType::prim();
                    args.push_back({pname, !required, pt});
                }
            }
            if (op.contains("requestBody")) {
                const auto& rb = op["requestBody"];
                if (rb.contains("content") && rb["content"].contains("application/json") &&
                    rb["content"]["application/json"].contains("schema")) {
                    SynTypePtr body =
                        resolve_schema(ctx, rb["content"]["application/json"]["schema"], 0);
                    if (body->kind != SyntacticType::Kind::Record)
                        throw LoadError("method '" + name + "': non-record request body");
                    for (const auto& f : body->fields) args.push_back(f);
                } else {
                    warn(report, name + ": request body without a JSON schema; skipped");
                }
            }

            SynTypePtr out;
            if (op.contains("responses")) {
                for (auto rit = op["responses"].begin(); rit != op["responses"].end();
                     ++rit) {
                    const std::string& code = rit.key();
                    if (code.size() != 3 || code[0] != '2') continue;
                    const auto& resp = rit.value();
                    if (resp.contains("schema")) {
                        out = resolve_schema(ctx, resp["schema"], 0);
                    } else if (resp.contains("content") &&
                               resp["content"].contains("application/json") &&
                               resp["content"]["application/json"].contains("schema")) {
                        out = resolve_schema(
                            ctx, resp["content"]["application/json"]["schema"], 0);
                    }
                    if (out) break;
                }
            }
            if (!out) {
                warn(report, name + ": no success response schema; method skipped");
                continue;
            }
            lib.methods[name] = MethodSig{SyntacticType::record(std::move(args)), out};
        }
    }
    return lib;
}

} // namespace

Library load_spec_json(const nlohmann::json& doc, LoadReport* report) {
    if (!doc.is_object()) throw LoadError("spec root must be a JSON object");
    if (doc.contains("paths") || doc.contains("definitions") || doc.contains("components") ||
        doc.contains("swagger") || doc.contains("openapi"))
        return load_openapi(doc, report);
    return load_dialect(doc);
}

Library load_spec_file(const std::string& path, LoadReport* report) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(path + ": " + e.what());
    }
    return load_spec_json(doc, report);
}

WitnessStore load_witnesses_json(const nlohmann::json& doc, const Library& lib) {
    if (!doc.is_array()) throw LoadError("witness file must be a JSON array");
    WitnessStore store;
    for (const auto& rec : doc) {
        if (!rec.is_object() || !rec.contains("method") || !rec.contains("in") ||
            !rec.contains("out"))
            throw LoadError("malformed witness record");
        Witness w;
        w.method = rec["method"].get<std::string>();
        if (!lib.methods.count(w.method))
            throw LoadError("witness names unknown method '" + w.method + "'");
        if (!rec["in"].is_object())
            throw LoadError("witness input for '" + w.method + "' must be an object");
        w.input = Value::from_json(rec["in"]);
        w.output = Value::from_json(rec["out"]);
        store.add(std::move(w));
    }
    return store;
}

WitnessStore load_witnesses_file(const std::string& path, const Library& lib) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw LoadError(path + ": " + e.what());
    }
    return load_witnesses_json(doc, lib);
}

nlohmann::json witnesses_to_json(const WitnessStore& store) {
    auto arr = nlohmann::json::array();
    for (const auto& w : store.items()) {
        nlohmann::json rec;
        rec["method"] = w.method;
        rec["in"] = w.input.to_json();
        rec["out"] = w.output.to_json();
        arr.push_back(rec);
    }
    return arr;
}

void save_witnesses_file(const std::string& path, const WitnessStore& store) {
    write_file(path, witnesses_to_json(store).dump(2) + "\n");
}

namespace {

nlohmann::json sem_type_to_json(const SemTypePtr& t) {
    switch (t->kind) {
        case SemanticType::Kind::LocSet: {
            auto arr = nlohmann::json::array();
            for (const auto& l : t->locs) arr.push_back(l.render());
            return arr;
        }
        case SemanticType::Kind::Object: return t->object_name;
        case SemanticType::Kind::Array: return {{"array", sem_type_to_json(t->elem)}};
        case SemanticType::Kind::Record: {
            auto rec = nlohmann::json::object();
            for (const auto& f : t->fields)
                rec[(f.optional ? "?" : "") + f.label] = sem_type_to_json(f.type);
            return {{"record", rec}};
        }
    }
    return nullptr;
}

} // namespace

nlohmann::json semantic_library_to_json(const SemanticLibrary& lib) {
    nlohmann::json out;
    out["objects"] = nlohmann::json::object();
    for (const auto& [name, t] : lib.objects) out["objects"][name] = sem_type_to_json(t);
    out["methods"] = nlohmann::json::object();
    for (const auto& [name, sig] : lib.methods)
        out["methods"][name] = {{"in", sem_type_to_json(sig.input)},
                                {"out", sem_type_to_json(sig.output)}};
    auto groups = nlohmann::json::array();
    for (const auto& g : lib.groups) {
        if (g.size() < 2) continue;
        auto arr = nlohmann::json::array();
        for (const auto& l : g) arr.push_back(l.render());
        groups.push_back(arr);
    }
    out["merged_groups"] = groups;
    return out;
}

nlohmann::json value_bank_to_json(const SemanticLibrary& lib) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [key, values] : lib.bank) {
        auto arr = nlohmann::json::array();
        for (const auto& v : values) arr.push_back(v.to_json());
        out[key] = arr;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw LoadError("cannot write '" + path + "'");
    out << content;
}

} // namespace apisynth
