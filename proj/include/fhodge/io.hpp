#pragma once

#include <string>
#include <vector>

#include "fhodge/realize.hpp"
#include "json.hpp"

namespace fhodge {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kField = "Q(i)";

/// Schema problems throw Error(Malformed) with a JSON-pointer-like path.
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j, const std::string& path = "");

Json mhs_to_json(const MHS1& x);
MHS1 mhs_from_json(const Json& j, const std::string& path = "");

Json fhs_to_json(const FHS1Object& x);
FHS1Object fhs_from_json(const Json& j, const std::string& path = "");

/// {"f0", "fz", "g"} relative to known objects.
Json morphism_maps_to_json(const FHS1Morphism& f);
FHS1Morphism morphism_from_maps(const Json& j, const FHS1Object& source, const FHS1Object& target,
                                const std::string& path = "");
/// {"source", "target", "f0", "fz", "g"}.
Json morphism_to_json(const FHS1Morphism& f);
FHS1Morphism morphism_from_json(const Json& j, const std::string& path = "");

/// {"objects": [...], "morphisms": [...]}; morphism i maps object i to object i+1.
Json sequence_to_json(const std::vector<FHS1Morphism>& seq);
std::vector<FHS1Morphism> sequence_from_json(const Json& j, const std::string& path = "");

Json motive_to_json(const Motive& m);
Motive motive_from_json(const Json& j, const std::string& path = "");

Json motive_morphism_to_json(const MotiveMorphism& f);

Json transcript_to_json(const std::vector<Check>& checks);
Json iso_to_json(const FHSIso& iso);
Json iso_to_json(const MotiveIso& iso);
Json exactness_to_json(const ExactnessReport& r);
Json violations_to_json(const std::vector<Violation>& v);

struct Document {
    std::string kind;  // mhs1 | fhs1 | motive | morphism | sequence
    Json payload;
};

Json make_document(const std::string& kind, Json payload);
Document parse_document(const std::string& text);
/// Canonical text: two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace fhodge
