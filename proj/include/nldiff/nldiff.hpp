#pragma once

#include "nldiff/baselines.hpp"
#include "nldiff/boundary_tables.hpp"
#include "nldiff/config.hpp"
#include "nldiff/core.hpp"
#include "nldiff/edge_stop.hpp"
#include "nldiff/filters.hpp"
#include "nldiff/harmonic.hpp"
#include "nldiff/image_io.hpp"
#include "nldiff/metrics.hpp"
#include "nldiff/parallel.hpp"
#include "nldiff/ratio1d.hpp"
#include "nldiff/ratio2d.hpp"
#include "nldiff/rng.hpp"
#include "nldiff/signal_io.hpp"
#include "nldiff/simplex.hpp"
#include "nldiff/solver1d.hpp"
#include "nldiff/solver2d.hpp"
#include "nldiff/synth.hpp"
#include "nldiff/tridiag.hpp"
#include "nldiff/tv2d.hpp"
