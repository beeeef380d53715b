#pragma once

// JSON and CSV forms of the library's value types.
//
// Mesh files: {"vertices": V, "faces": [[i,j,k], ...],
//              "edge_lengths": [[i,j,len], ...]}; edge_lengths may be
// omitted for unit lengths. Infinite interval ends are written as null.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "systole/claims.hpp"
#include "systole/homology.hpp"
#include "systole/loops.hpp"
#include "systole/mesh.hpp"
#include "systole/optimizer.hpp"
#include "systole/surface_check.hpp"

namespace systole {

using Json = nlohmann::json;

Json mesh_to_json(const TriMesh& mesh);
/// Throws Error(Domain) on a malformed document; mesh validation errors
/// propagate from the TriMesh constructor.
TriMesh mesh_from_json(const Json& j);
TriMesh load_mesh(const std::filesystem::path& path);
void save_mesh(const TriMesh& mesh, const std::filesystem::path& path);

Json to_json(const CycleWitness& w);
CycleWitness witness_from_json(const Json& j);

Json to_json(const LoopGrowthSample& s);
LoopGrowthSample growth_from_json(const Json& j);
/// "T,N" header then one row per threshold.
std::string to_csv(const LoopGrowthSample& s);

Json to_json(const EntropyEstimate& e);
EntropyEstimate entropy_from_json(const Json& j);

/// {params, value, evaluations, slacks, low_confidence}.
Json to_json(const OptimizationResult& r);
OptimizationResult optimization_from_json(const Json& j);

Json to_json(const ClaimReport& c);
ClaimReport claim_from_json(const Json& j);

Json to_json(const SurfaceCheckReport& r);

}  // namespace systole
