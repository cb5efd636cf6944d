#pragma once

#include <Eigen/Dense>
#include <vector>

#include "aperiodic/cps.hpp"
#include "aperiodic/pointset.hpp"

namespace aperiodic {

/// Vertex set of a rhombic Penrose tiling with unit edge length inside the
/// disk of the given radius. The diffraction pattern of such a patch is
/// tenfold symmetric; the patch itself is a generic (non-singular) cut of
/// the tiling space, so the point set is not mirror/rotation symmetric.
///
/// Realization: Z^5 with physical projection rows sqrt(2/5)*cos(2*pi*j/5),
/// sqrt(2/5)*sin(2*pi*j/5) and internal rows with doubled angles, restricted
/// to the four affine classes sum(n_j) = k, k in {1,2,3,4}, each selected by
/// the pentagonal window obtained by projecting the height-k cross-section
/// of the unit 5-cube to internal space (with a fixed generic internal
/// shift avoiding the singular zero-shift cut). A final rescale by
/// sqrt(5/2) normalizes the edge length to 1. Provenance is the Z^5
/// coordinate vector.
PointSet penrose_vertices(double radius, double radius_cap = 200.0);

/// The pentagonal window of class k (k in {1,..,4}), in internal-space
/// coordinates before rescaling. Exposed for tests.
PolygonWindow penrose_window(int k);

}  // namespace aperiodic
