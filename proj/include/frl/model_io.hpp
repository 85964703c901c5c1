#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "frl/antecedent.hpp"
#include "frl/dataset.hpp"
#include "frl/rational.hpp"
#include "frl/rulelist.hpp"

namespace frl {

// A trained rule list together with everything needed to apply it to new
// data: the predicate table its ids refer to and the binning that produced it.
struct Model {
    RuleList list;
    std::vector<Predicate> predicates;
    BinningSchema schema;
    ObjectiveParams params;
    std::optional<Rational> objective;
    std::string label_column;
    std::string positive_value;

    std::vector<std::string> predicate_names() const;
};

Model make_model(const RuleList& list, const BinaryDataset& dataset, const ObjectiveParams& params,
                 std::optional<Rational> objective = std::nullopt);

// Canonical form: sorted keys, two-space indent, trailing newline.
nlohmann::json model_to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);
std::string dump_model(const Model& model);
Model load_model(const std::string& path);
void save_model(const Model& model, const std::string& path);

// Re-expresses the model's rules with predicate ids of `dataset`, matching by
// name. Throws SchemaMismatch for unknown names.
RuleList bind_model(const Model& model, const BinaryDataset& dataset);

nlohmann::json antecedents_to_json(const AntecedentSet& antecedents, const BinaryDataset& dataset);
AntecedentSet antecedents_from_json(const nlohmann::json& j, const BinaryDataset& dataset);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace frl
