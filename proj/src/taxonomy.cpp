#include "contribmine/taxonomy.hpp"

#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "contribmine/errors.hpp"

namespace contribmine {

LoadedTaxonomy load_taxonomy(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open taxonomy config: " + path.string());
    nlohmann::json obj = nlohmann::json::parse(in, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw config_error("taxonomy config is not a JSON object: " + path.string());
    }

    LoadedTaxonomy out;
    out.taxonomy.profiles.resize(kCategoryCount);

    for (CreditCategory cat : all_categories()) {
        std::string name(category_name(cat));
        if (!obj.contains(name)) {
            throw config_error("taxonomy config is missing category '" + name + "'");
        }
        const auto& entry = obj[name];
        CategoryProfile profile;
        profile.category = cat;

        if (!entry.contains("keywords") || !entry["keywords"].is_array() || entry["keywords"].empty()) {
            throw config_error("category '" + name + "' has no keywords");
        }
        std::set<std::string> seen;
        for (const auto& k : entry["keywords"]) {
            std::string kw = k.get<std::string>();
            if (!seen.insert(kw).second) {
                throw validation_error("category '" + name + "' lists keyword '" + kw + "' twice");
            }
            profile.keywords.push_back(std::move(kw));
        }

        if (!entry.contains("examples") || !entry["examples"].is_array()) {
            throw config_error("category '" + name + "' has no examples");
        }
        for (const auto& e : entry["examples"]) profile.examples.push_back(e.get<std::string>());
        if (profile.examples.size() < 5 || profile.examples.size() > 15) {
            throw validation_error("category '" + name + "': examples out of range (" +
                                   std::to_string(profile.examples.size()) + ", expected 5-15)");
        }

        out.taxonomy.profiles[static_cast<std::size_t>(cat)] = std::move(profile);
    }

    // Cross-category keyword overlap is allowed; surface it so callers can log.
    std::map<std::string, std::vector<CreditCategory>> owners;
    for (const auto& p : out.taxonomy.profiles) {
        for (const auto& kw : p.keywords) owners[kw].push_back(p.category);
    }
    for (const auto& [kw, cats] : owners) {
        if (cats.size() < 2) continue;
        std::string msg = "keyword '" + kw + "' appears under";
        for (CreditCategory c : cats) msg += " '" + std::string(category_name(c)) + "'";
        out.warnings.push_back(std::move(msg));
    }

    return out;
}

} // namespace contribmine
