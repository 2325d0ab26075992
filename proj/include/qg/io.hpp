#pragma once

#include "qg/category.hpp"
#include "qg/cbnorm.hpp"
#include "qg/corep.hpp"
#include "qg/doubles.hpp"
#include "qg/freeprod.hpp"
#include "qg/hopf.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace qg::io {

using json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Parse failures are Error("ParseError", ...) naming the line or the field path.

json read_file(const std::string& path);
std::string read_text(const std::string& path);
json parse_text(const std::string& text, const std::string& origin = "<input>");
// Canonical text: two-space indent, trailing newline.
std::string emit(const json& j);
void write_file(const std::string& path, const json& j);

// "kind" of a document, after checking format_version.
std::string kind_of(const json& doc);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(const std::string& bytes);

json to_json(const HopfData& d);
json to_json(const IrrTable& t);
json to_json(const FinSupp& a);
json to_json(const PolElement& x);
json to_json(const BlockMap& f);
json to_json(const FusionRing& r);
json to_json(const Matching& m);
json to_json(const FreeProductTable& fp);
json words_to_json(const std::vector<AlternatingWord>& words);
json vector_to_json(const std::vector<cd>& v);
json operator_to_json(const Mat& m);

HopfData hopf_from_json(const json& doc);
IrrTable table_from_json(const json& doc);
FinSupp finsupp_from_json(const json& doc);
PolElement pol_from_json(const json& doc);
BlockMap map_from_json(const json& doc);
FusionRing ring_from_json(const json& doc);
Matching matching_from_json(const json& doc);
FreeProductTable free_product_from_json(const json& doc);
std::vector<AlternatingWord> words_from_json(const json& doc);
std::vector<cd> vector_from_json(const json& doc);
Mat operator_from_json(const json& doc);

}  // namespace qg::io
