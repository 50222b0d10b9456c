#include "apisynth/testgen.hpp"

#include "apisynth/spec_load.hpp"

namespace apisynth {

Annotations load_annotations_json(const nlohmann::json& doc, const Library& lib) {
    if (!doc.is_object()) throw LoadError("annotations root must be a JSON object");
    Annotations out;
    auto heads = lib.head_names();
    for (auto mit = doc.begin(); mit != doc.end(); ++mit) {
        auto sig = lib.methods.find(mit.key());
        if (sig == lib.methods.end())
            throw LoadError("annotation names unknown method '" + mit.key() + "'");
        if (!mit.value().is_object())
            throw LoadError("annotation for '" + mit.key() + "' must be an object");
        for (auto ait = mit.value().begin(); ait != mit.value().end(); ++ait) {
            if (!sig->second.input->field(ait.key()))
                throw LoadError("annotation names unknown argument '" + mit.key() + "." +
                                ait.key() + "'");
            if (!ait.value().is_string())
                throw LoadError("annotation value for '" + mit.key() + "." + ait.key() +
                                "' must be a location string");
            out[mit.key()][ait.key()] =
                parse_location(ait.value().get<std::string>(), heads);
        }
    }
    return out;
}

namespace {

// subsets of {0..n-1} with size <= cap, smallest first, each in index order
std::vector<std::vector<size_t>> small_subsets(size_t n, size_t cap) {
    std::vector<std::vector<size_t>> out = {{}};
    for (size_t size = 1; size <= std::min(n, cap); ++size) {
        std::vector<size_t> pick(size);
        for (size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            out.push_back(pick);
            size_t i = size;
            while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return out;
}

} // namespace

int generate_tests(const SemanticLibrary& lib, const Annotations& annotations,
                   Service& service, WitnessStore& store, std::mt19937_64& rng,
                   const TestGenConfig& config) {
    int added = 0;
    for (const auto& [method, sig] : lib.methods) {
        std::vector<const SemField*> required, optionals;
        for (const auto& f : sig.input->fields)
            (f.optional ? optionals : required).push_back(&f);

        auto method_ann = annotations.find(method);
        for (const auto& subset :
             small_subsets(optionals.size(), static_cast<size_t>(std::max(
                                                 0, config.max_optional_subset)))) {
            std::vector<const SemField*> args = required;
            for (size_t idx : subset) args.push_back(optionals[idx]);

            std::vector<std::pair<std::string, const std::vector<Value>*>> pools;
            bool buildable = true;
            for (const SemField* arg : args) {
                const std::vector<Value>* pool = lib.bank_for(arg->type);
                if ((!pool || pool->empty()) && method_ann != annotations.end()) {
                    auto ann = method_ann->second.find(arg->label);
                    if (ann != method_ann->second.end())
                        if (SemTypePtr hinted = infer_location_type(lib, ann->second))
                            pool = lib.bank_for(hinted);
                }
                if (!pool || pool->empty()) {
                    buildable = false;
                    break;
                }
                pools.emplace_back(arg->label, pool);
            }
            if (!buildable) continue;

            for (int s = 0; s < config.samples_per_shape; ++s) {
                std::vector<std::pair<std::string, Value>> fields;
                for (const auto& [label, pool] : pools)
                    fields.emplace_back(label, (*pool)[rng() % pool->size()]);
                Value input = Value::object(std::move(fields));
                if (auto result = service.call(method, input))
                    if (store.add(Witness{method, input, *result})) ++added;
            }
        }
    }
    return added;
}

AnalyzeResult analyze_api(const Library& lib, const WitnessStore& initial,
                          const Annotations& annotations, Service& service,
                          const AnalyzeConfig& config) {
    AnalyzeResult res;
    res.witnesses = initial;
    res.lib = mine_types(lib, res.witnesses);
    std::mt19937_64 rng(config.seed);
    for (int round = 0; round < config.max_rounds; ++round) {
        ++res.rounds;
        int added =
            generate_tests(res.lib, annotations, service, res.witnesses, rng, config.gen);
        res.generated += added;
        if (added == 0) break;
        res.lib = mine_types(lib, res.witnesses);
    }
    res.lib = mine_types(lib, res.witnesses);
    return res;
}

} // namespace apisynth
