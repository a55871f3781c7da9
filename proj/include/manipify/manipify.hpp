#pragma once

#include "manipify/analyzer.hpp"
#include "manipify/corpus.hpp"
#include "manipify/error.hpp"
#include "manipify/features.hpp"
#include "manipify/hashcat.hpp"
#include "manipify/io.hpp"
#include "manipify/labels.hpp"
#include "manipify/locality.hpp"
#include "manipify/ml.hpp"
#include "manipify/pipeline.hpp"
#include "manipify/synth.hpp"
#include "manipify/textproc.hpp"
#include "manipify/timeutil.hpp"
#include "manipify/version.hpp"
