#include <fstream>

#include "netcap/architecture.hpp"
#include "netcap/errors.hpp"

namespace netcap {

namespace {

using nlohmann::json;

json entry_to_json(const EntrySpec& e) {
    if (e.is_free()) return json{{"free", e.index}};
    return json{{"fixed", e.value}};
}

EntrySpec entry_from_json(const json& j) {
    if (!j.is_object() || j.size() != 1)
        throw ValidationError("entry must be {\"fixed\": value} or {\"free\": index}");
    if (j.contains("fixed")) {
        if (!j["fixed"].is_number()) throw ValidationError("fixed entry value must be a number");
        return EntrySpec::fixed(j["fixed"].get<double>());
    }
    if (j.contains("free")) {
        if (!j["free"].is_number_integer() || j["free"].get<long long>() < 0)
            throw ValidationError("free entry index must be a nonnegative integer");
        return EntrySpec::free_at(j["free"].get<int>());
    }
    throw ValidationError("entry must contain exactly one of \"fixed\" or \"free\"");
}

json activation_to_json(const ActivationSpec& act) {
    if (act.rule == "gompertz")
        return json{{"rule", "gompertz"}, {"a", act.params[0]}, {"b", act.params[1]}};
    if (act.rule == "custom-table") {
        std::size_t half = act.params.size() / 2;
        json knots = json::array();
        for (std::size_t i = 0; i < half; ++i)
            knots.push_back(json::array({act.params[i], act.params[half + i]}));
        return json{{"rule", "custom-table"},
                    {"knots", knots},
                    {"c1", act.lipschitz_c1},
                    {"c", act.growth_c}};
    }
    return json(act.rule);
}

ActivationSpec activation_from_json(const json& j) {
    if (j.is_string()) return activation_by_name(j.get<std::string>());
    if (!j.is_object() || !j.contains("rule"))
        throw ValidationError("activation must be a rule name or an object with \"rule\"");
    std::string rule = j["rule"].get<std::string>();
    if (rule == "gompertz")
        return gompertz_activation(j.value("a", 1.0), j.value("b", 1.0));
    if (rule == "custom-table") {
        if (!j.contains("knots") || !j["knots"].is_array())
            throw ValidationError("custom-table activation needs a \"knots\" array");
        std::vector<double> ts, vs;
        for (const auto& k : j["knots"]) {
            if (!k.is_array() || k.size() != 2)
                throw ValidationError("each custom-table knot must be a [t, value] pair");
            ts.push_back(k[0].get<double>());
            vs.push_back(k[1].get<double>());
        }
        if (!j.contains("c1") || !j.contains("c"))
            throw ValidationError("custom-table activation needs declared \"c1\" and \"c\"");
        return custom_table_activation(ts, vs, j["c1"].get<double>(), j["c"].get<double>());
    }
    return activation_by_name(rule);
}

std::vector<EntrySpec> entries_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<EntrySpec> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(entry_from_json(e));
    return out;
}

Architecture preset_from_json(const json& j) {
    std::string name = j["preset"].get<std::string>();
    ActivationSpec act = j.contains("activation") ? activation_from_json(j["activation"])
                                                  : logistic_activation();
    double radius = j.value("radius", 1.0);
    if (name == "dense") {
        if (!j.contains("widths")) throw ValidationError("dense preset needs \"widths\"");
        return dense_architecture(j["widths"].get<std::vector<int>>(), act, radius);
    }
    if (name == "toeplitz1d") {
        return toeplitz1d_architecture(j.value("width", 5), j.value("kernel", 3),
                                       j.value("layers", 1), act, radius);
    }
    if (name == "tree") {
        return tree_architecture(j.value("depth", 2), act, radius);
    }
    throw ValidationError("unknown preset: " + name);
}

} // namespace

json architecture_to_json(const Architecture& arch) {
    json layers = json::array();
    for (const auto& layer : arch.layers) {
        json rows = json::array();
        for (int i = 0; i < layer.d_out; ++i) {
            json row = json::array();
            for (int jcol = 0; jcol < layer.d_in; ++jcol)
                row.push_back(entry_to_json(layer.weight(i, jcol)));
            rows.push_back(std::move(row));
        }
        json biases = json::array();
        for (const auto& b : layer.biases) biases.push_back(entry_to_json(b));
        layers.push_back(json{{"d_in", layer.d_in},
                              {"d_out", layer.d_out},
                              {"activation", activation_to_json(layer.activation)},
                              {"weights", std::move(rows)},
                              {"biases", std::move(biases)}});
    }
    json out = json::array();
    for (const auto& e : arch.output) out.push_back(entry_to_json(e));
    return json{{"input_dim", arch.input_dim},
                {"radius", arch.radius},
                {"layers", std::move(layers)},
                {"output", std::move(out)}};
}

Architecture architecture_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("architecture document must be a JSON object");
    if (j.contains("preset")) return preset_from_json(j);

    for (const char* key : {"input_dim", "radius", "layers", "output"})
        if (!j.contains(key))
            throw ValidationError(std::string("architecture is missing \"") + key + "\"");

    Architecture arch;
    arch.input_dim = j["input_dim"].get<int>();
    arch.radius = j["radius"].get<double>();
    if (!j["layers"].is_array() || j["layers"].empty())
        throw ValidationError("\"layers\" must be a nonempty array");
    for (const auto& jl : j["layers"]) {
        LayerStructure layer;
        layer.d_in = jl.at("d_in").get<int>();
        layer.d_out = jl.at("d_out").get<int>();
        layer.activation = activation_from_json(jl.at("activation"));
        if (!jl.at("weights").is_array() ||
            jl["weights"].size() != static_cast<std::size_t>(layer.d_out))
            throw ValidationError("\"weights\" must hold d_out rows");
        for (const auto& row : jl["weights"]) {
            auto entries = entries_from_json(row, "weight row");
            if (entries.size() != static_cast<std::size_t>(layer.d_in))
                throw ValidationError("weight row length does not match d_in");
            layer.weights.insert(layer.weights.end(), entries.begin(), entries.end());
        }
        layer.biases = entries_from_json(jl.at("biases"), "biases");
        arch.layers.push_back(std::move(layer));
    }
    arch.output = entries_from_json(j["output"], "output");
    arch.validate();
    return arch;
}

Architecture load_architecture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open architecture file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError("architecture file is not valid JSON: " + std::string(e.what()));
    }
    return architecture_from_json(j);
}

} // namespace netcap
