#pragma once

#include "blockwave/alignment.hpp"
#include "blockwave/baseline_engine.hpp"
#include "blockwave/batch_runner.hpp"
#include "blockwave/block_kernel.hpp"
#include "blockwave/error.hpp"
#include "blockwave/oracle.hpp"
#include "blockwave/rational.hpp"
#include "blockwave/readsim.hpp"
#include "blockwave/scoring.hpp"
#include "blockwave/seqpack.hpp"
#include "blockwave/wavefront_engine.hpp"
