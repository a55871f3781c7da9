#pragma once

#include "manipify/ml/dataset.hpp"
#include "manipify/ml/logreg.hpp"
#include "manipify/ml/metrics.hpp"
#include "manipify/ml/split.hpp"
#include "manipify/ml/tree.hpp"
