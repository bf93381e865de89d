#pragma once

#include <filesystem>
#include <string>

#include "partmech/generators.hpp"
#include "partmech/mechanism.hpp"

namespace partmech {

// JSON file formats. Every rational is serialized as a canonical "p/q" (or
// plain integer "p") string so files round-trip losslessly.
//
//   instance:  {"items": [{"values": [...], "probs": [...]}, ...]}
//   mechanism: {"bundles": [{"items": [0, 1], "price": "3"}, ...]}
//   menu:      {"options": [{"items": [0], "price": "2"}, ...]}
//   gadget:    {"X": 2, "Y": 2, "Z": 2, "edges": [[0,0,0], ...],
//               "pi": ["72", ...], "pi_min": "64", "pi_max": "80"}

std::string write_instance_json(const ProductInstance& inst);
ProductInstance read_instance_json(const std::string& text);

std::string write_mechanism_json(const PricedPartition& pp);
PricedPartition read_mechanism_json(const std::string& text);

std::string write_menu_json(const ChooseOneMenu& menu);
ChooseOneMenu read_menu_json(const std::string& text);

std::string write_gadget_meta_json(const GadgetMeta& meta);
GadgetMeta read_gadget_meta_json(const std::string& text);

// Whole-file helpers; read throws Error(FileFormat) on missing/bad files.
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace partmech
