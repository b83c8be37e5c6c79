#pragma once

#include "alignment.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "match.hpp"
#include "metrics.hpp"
#include "pairwise.hpp"
#include "pipeline.hpp"
#include "scoring_matrix.hpp"
#include "segmentation.hpp"
#include "speaker_mapping.hpp"
#include "text.hpp"
#include "transcript.hpp"
