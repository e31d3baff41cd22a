#pragma once

#include "lah/clustering.hpp"
#include "lah/config.hpp"
#include "lah/dataset.hpp"
#include "lah/dcorr.hpp"
#include "lah/eval.hpp"
#include "lah/hierarchy.hpp"
#include "lah/label_semantics.hpp"
#include "lah/ldt.hpp"
#include "lah/model_io.hpp"
#include "lah/pipeline.hpp"
#include "lah/rules.hpp"
