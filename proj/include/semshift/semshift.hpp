#pragma once

#include "semshift/assignment.hpp"
#include "semshift/clustering.hpp"
#include "semshift/config.hpp"
#include "semshift/detection.hpp"
#include "semshift/embedding_store.hpp"
#include "semshift/error.hpp"
#include "semshift/evaluation.hpp"
#include "semshift/graph.hpp"
#include "semshift/parallel.hpp"
#include "semshift/ranking.hpp"
#include "semshift/serialize.hpp"
#include "semshift/similarity.hpp"
#include "semshift/synth.hpp"
#include "semshift/xlingual.hpp"
