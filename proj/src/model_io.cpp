#include "frl/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "frl/errors.hpp"

namespace frl {

using nlohmann::json;

namespace {

json counts_json(const Rational& estimate, const ClassCounts& c) {
    return json{{"estimate", estimate.to_double()},
                {"estimate_exact", estimate.str()},
                {"n_pos", c.pos},
                {"n_neg", c.neg}};
}

ClassCounts counts_from(const json& j) { return {j.at("n_pos").get<std::size_t>(), j.at("n_neg").get<std::size_t>()}; }

const char* mode_name(ListMode m) { return m == ListMode::compatible ? "falling" : "softly_falling"; }

ListMode mode_from(const std::string& s) {
    if (s == "falling") return ListMode::compatible;
    if (s == "softly_falling") return ListMode::softly_falling;
    throw DataError("unknown model mode '" + s + "'");
}

} // namespace

std::vector<std::string> Model::predicate_names() const {
    std::vector<std::string> out;
    for (const auto& p : predicates) out.push_back(p.name);
    return out;
}

Model make_model(const RuleList& list, const BinaryDataset& dataset, const ObjectiveParams& params,
                 std::optional<Rational> objective) {
    Model m;
    m.list = list;
    m.predicates = dataset.predicates();
    m.schema = dataset.schema();
    m.params = params;
    m.objective = std::move(objective);
    return m;
}

json model_to_json(const Model& model) {
    json rules = json::array();
    for (const auto& rule : model.list.rules) {
        json names = json::array();
        for (auto p : rule.predicates) names.push_back(model.predicates.at(p).name);
        json r = counts_json(rule.estimate, rule.counts);
        r["antecedent"] = names;
        rules.push_back(r);
    }
    json predicates = json::array();
    for (const auto& p : model.predicates)
        predicates.push_back({{"name", p.name},
                              {"column", p.source_column},
                              {"kind", p.kind == PredicateKind::category ? "category" : "interval"}});
    json schema = json::array();
    for (const auto& c : model.schema.columns)
        schema.push_back({{"column", c.column}, {"numeric", c.numeric}, {"categories", c.categories}, {"edges", c.edges}});

    json j;
    j["format"] = "frl-model/1";
    j["mode"] = mode_name(model.list.mode);
    j["rules"] = rules;
    j["else"] = counts_json(model.list.else_estimate, model.list.else_counts);
    j["params"] = {{"w", model.params.w.str()}, {"C", model.params.C.str()}, {"C1", model.params.C1.str()}};
    j["objective"] = model.objective ? json(model.objective->str()) : json(nullptr);
    j["predicates"] = predicates;
    j["schema"] = schema;
    j["label"] = {{"column", model.label_column}, {"positive", model.positive_value}};
    return j;
}

Model model_from_json(const json& j) {
    try {
        if (j.at("format") != "frl-model/1") throw DataError("unsupported model format");
        Model m;
        for (const auto& p : j.at("predicates"))
            m.predicates.push_back({p.at("name").get<std::string>(), p.at("column").get<std::size_t>(),
                                    p.at("kind") == "interval" ? PredicateKind::interval : PredicateKind::category});
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < m.predicates.size(); ++i) index[m.predicates[i].name] = i;

        for (const auto& c : j.at("schema"))
            m.schema.columns.push_back({c.at("column").get<std::string>(), c.at("numeric").get<bool>(),
                                        c.at("categories").get<std::vector<std::string>>(),
                                        c.at("edges").get<std::vector<double>>()});

        m.list.mode = mode_from(j.at("mode").get<std::string>());
        for (const auto& r : j.at("rules")) {
            Rule rule;
            for (const auto& name : r.at("antecedent")) {
                auto it = index.find(name.get<std::string>());
                if (it == index.end()) throw SchemaMismatch("rule uses unknown predicate '" + name.get<std::string>() + "'");
                rule.predicates.push_back(it->second);
            }
            rule.estimate = Rational::parse(r.at("estimate_exact").get<std::string>());
            rule.counts = counts_from(r);
            m.list.rules.push_back(std::move(rule));
        }
        const json& e = j.at("else");
        m.list.else_estimate = Rational::parse(e.at("estimate_exact").get<std::string>());
        m.list.else_counts = counts_from(e);

        const json& p = j.at("params");
        m.params.w = Rational::parse(p.at("w").get<std::string>());
        m.params.C = Rational::parse(p.at("C").get<std::string>());
        m.params.C1 = Rational::parse(p.at("C1").get<std::string>());
        if (!j.at("objective").is_null()) m.objective = Rational::parse(j.at("objective").get<std::string>());
        m.label_column = j.at("label").at("column").get<std::string>();
        m.positive_value = j.at("label").at("positive").get<std::string>();
        return m;
    } catch (const json::exception& ex) {
        throw DataError(std::string("malformed model JSON: ") + ex.what());
    }
}

std::string dump_model(const Model& model) { return model_to_json(model).dump(2) + "\n"; }

Model load_model(const std::string& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& ex) {
        throw DataError(path + ": " + ex.what());
    }
    return model_from_json(j);
}

void save_model(const Model& model, const std::string& path) { write_text_file(path, dump_model(model)); }

RuleList bind_model(const Model& model, const BinaryDataset& dataset) {
    RuleList out = model.list;
    for (auto& rule : out.rules)
        for (auto& p : rule.predicates) {
            const std::string& name = model.predicates.at(p).name;
            auto idx = dataset.predicate_index(name);
            if (!idx) throw SchemaMismatch("dataset has no predicate '" + name + "'");
            p = *idx;
        }
    return out;
}

json antecedents_to_json(const AntecedentSet& antecedents, const BinaryDataset& dataset) {
    json list = json::array();
    for (const auto& a : antecedents) {
        json names = json::array();
        for (auto p : a.predicate_ids) names.push_back(dataset.predicate(p).name);
        list.push_back({{"predicates", names}, {"support_pos", a.support_pos}, {"support_neg", a.support_neg}});
    }
    return list;
}

AntecedentSet antecedents_from_json(const json& j, const BinaryDataset& dataset) {
    try {
        std::vector<std::vector<std::string>> names;
        if (!j.is_array()) throw DataError("antecedent JSON must be an array");
        for (const auto& a : j) names.push_back(a.at("predicates").get<std::vector<std::string>>());
        return antecedents_from_names(dataset, names);
    } catch (const json::exception& ex) {
        throw DataError(std::string("malformed antecedent JSON: ") + ex.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path);
    out << text;
    if (!out) throw DataError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace frl
