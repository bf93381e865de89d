#include "partmech/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "partmech/errors.hpp"

namespace partmech {

namespace {

using nlohmann::json;

json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const json& j) {
    if (!j.is_string()) {
        throw Error(ErrorKind::FileFormat, "expected a rational string, got " + j.dump());
    }
    return parse_rational(j.get<std::string>());
}

json parse_document(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw Error(ErrorKind::FileFormat, "malformed JSON");
    }
    return j;
}

std::vector<int> items_from_json(const json& j) {
    if (!j.is_array()) throw Error(ErrorKind::FileFormat, "expected an item index array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) {
            throw Error(ErrorKind::FileFormat, "item indices must be integers");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace

std::string write_instance_json(const ProductInstance& inst) {
    json items = json::array();
    for (const DiscreteDist& d : inst.items) {
        json values = json::array();
        json probs = json::array();
        for (std::size_t i = 0; i < d.size(); ++i) {
            values.push_back(rational_to_json(d.support()[i]));
            probs.push_back(rational_to_json(d.probs()[i]));
        }
        items.push_back(json{{"values", values}, {"probs", probs}});
    }
    return json{{"items", items}}.dump(2) + "\n";
}

ProductInstance read_instance_json(const std::string& text) {
    json j = parse_document(text);
    if (!j.contains("items") || !j["items"].is_array() || j["items"].empty()) {
        throw Error(ErrorKind::FileFormat, "instance needs a non-empty 'items' array");
    }
    ProductInstance inst;
    try {
        for (const auto& item : j["items"]) {
            if (!item.contains("values") || !item.contains("probs") ||
                !item["values"].is_array() || !item["probs"].is_array() ||
                item["values"].size() != item["probs"].size()) {
                throw Error(ErrorKind::FileFormat, "item needs aligned 'values' and 'probs'");
            }
            std::vector<Rational> values, probs;
            for (const auto& v : item["values"]) values.push_back(rational_from_json(v));
            for (const auto& p : item["probs"]) probs.push_back(rational_from_json(p));
            inst.items.emplace_back(std::move(values), std::move(probs));
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument) {
            throw Error(ErrorKind::FileFormat, e.what());
        }
        throw;
    }
    return inst;
}

std::string write_mechanism_json(const PricedPartition& pp) {
    json bundles = json::array();
    for (const PricedBundle& b : pp.bundles) {
        bundles.push_back(json{{"items", b.items}, {"price", rational_to_json(b.price)}});
    }
    return json{{"bundles", bundles}}.dump(2) + "\n";
}

PricedPartition read_mechanism_json(const std::string& text) {
    json j = parse_document(text);
    if (!j.contains("bundles") || !j["bundles"].is_array()) {
        throw Error(ErrorKind::FileFormat, "mechanism needs a 'bundles' array");
    }
    PricedPartition pp;
    for (const auto& b : j["bundles"]) {
        if (!b.contains("items") || !b.contains("price")) {
            throw Error(ErrorKind::FileFormat, "bundle needs 'items' and 'price'");
        }
        pp.bundles.push_back(PricedBundle{items_from_json(b["items"]), rational_from_json(b["price"])});
    }
    return pp;
}

std::string write_menu_json(const ChooseOneMenu& menu) {
    json options = json::array();
    for (const auto& opt : menu.options) {
        options.push_back(json{{"items", opt.items}, {"price", rational_to_json(opt.price)}});
    }
    return json{{"options", options}}.dump(2) + "\n";
}

ChooseOneMenu read_menu_json(const std::string& text) {
    json j = parse_document(text);
    if (!j.contains("options") || !j["options"].is_array()) {
        throw Error(ErrorKind::FileFormat, "menu needs an 'options' array");
    }
    ChooseOneMenu menu;
    for (const auto& opt : j["options"]) {
        if (!opt.contains("items") || !opt.contains("price")) {
            throw Error(ErrorKind::FileFormat, "menu option needs 'items' and 'price'");
        }
        menu.options.push_back(
            ChooseOneMenu::Option{items_from_json(opt["items"]), rational_from_json(opt["price"])});
    }
    return menu;
}

std::string write_gadget_meta_json(const GadgetMeta& meta) {
    json edges = json::array();
    for (const Hyperedge& e : meta.edges) edges.push_back(json::array({e.x, e.y, e.z}));
    json pi = json::array();
    for (const Integer& p : meta.pi) pi.push_back(p.get_str());
    return json{{"X", meta.X}, {"Y", meta.Y},     {"Z", meta.Z},
                {"edges", edges}, {"pi", pi},
                {"pi_min", meta.pi_min.get_str()}, {"pi_max", meta.pi_max.get_str()}}
               .dump(2) +
           "\n";
}

GadgetMeta read_gadget_meta_json(const std::string& text) {
    json j = parse_document(text);
    GadgetMeta meta;
    try {
        meta.X = j.at("X").get<int>();
        meta.Y = j.at("Y").get<int>();
        meta.Z = j.at("Z").get<int>();
        for (const auto& e : j.at("edges")) {
            meta.edges.push_back(Hyperedge{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
        }
        for (const auto& p : j.at("pi")) meta.pi.emplace_back(p.get<std::string>());
        meta.pi_min = Integer(j.at("pi_min").get<std::string>());
        meta.pi_max = Integer(j.at("pi_max").get<std::string>());
    } catch (const json::exception& e) {
        throw Error(ErrorKind::FileFormat, std::string("bad gadget meta: ") + e.what());
    }
    return meta;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::FileFormat, "cannot open " + path.string() + " for writing");
    }
    out << text;
    if (!out.flush()) {
        throw Error(ErrorKind::FileFormat, "failed writing " + path.string());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::FileFormat, "cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace partmech
