#pragma once

// Umbrella header.

#include "signed_spectra/error.hpp"
#include "signed_spectra/signed_graph.hpp"
#include "signed_spectra/cycles.hpp"
#include "signed_spectra/spectra.hpp"
#include "signed_spectra/bounds.hpp"
#include "signed_spectra/constructions.hpp"
#include "signed_spectra/graph6.hpp"
#include "signed_spectra/corpus.hpp"
#include "signed_spectra/random_graphs.hpp"
#include "signed_spectra/parallel.hpp"
#include "signed_spectra/search.hpp"
#include "signed_spectra/report.hpp"
