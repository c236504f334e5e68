#pragma once

// Everything at once. Individual headers can be included on their own.

#include "motifclust/clustering.hpp"
#include "motifclust/enumerate.hpp"
#include "motifclust/errors.hpp"
#include "motifclust/formula.hpp"
#include "motifclust/graph.hpp"
#include "motifclust/io.hpp"
#include "motifclust/kmeans.hpp"
#include "motifclust/lanczos.hpp"
#include "motifclust/metrics.hpp"
#include "motifclust/motif.hpp"
#include "motifclust/motif_adjacency.hpp"
#include "motifclust/oracle.hpp"
#include "motifclust/spectral.hpp"
