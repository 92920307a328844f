#pragma once

#include <json.hpp>

#include "blochband/cell_spec.hpp"
#include "blochband/mesh.hpp"

namespace blochband {

// Mesh density control. `scale` multiplies the default density (2.0 halves
// every target edge length); `disk_segments` is the polygonal resolution of
// disk boundaries.
struct Resolution {
    double scale = 1.0;
    int disk_segments = 64;
};

TaggedMesh build_deck_cell(const CellSpec& spec, const Resolution& res = {});
TaggedMesh build_frame_cell(const CellSpec& spec, const Resolution& res = {});
TaggedMesh build_cell(const CellSpec& spec, const Resolution& res = {});

// Reproducibility record: derived coordinates (disk centers, attachment
// points, link table, support patches) and mesh statistics.
nlohmann::json geometry_report(const CellSpec& spec, const TaggedMesh& mesh);

} // namespace blochband
