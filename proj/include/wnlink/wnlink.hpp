#pragma once

// Umbrella header for the whole library.

#include "wnlink/candidates.hpp"
#include "wnlink/config.hpp"
#include "wnlink/context.hpp"
#include "wnlink/corpus.hpp"
#include "wnlink/crossval.hpp"
#include "wnlink/dictionary.hpp"
#include "wnlink/domain.hpp"
#include "wnlink/embedding.hpp"
#include "wnlink/error.hpp"
#include "wnlink/evaluate.hpp"
#include "wnlink/features.hpp"
#include "wnlink/induce.hpp"
#include "wnlink/infogain.hpp"
#include "wnlink/knn.hpp"
#include "wnlink/links.hpp"
#include "wnlink/nb.hpp"
#include "wnlink/pos.hpp"
#include "wnlink/rng.hpp"
#include "wnlink/synthgen.hpp"
#include "wnlink/text.hpp"
#include "wnlink/trainset.hpp"
#include "wnlink/version.hpp"
#include "wnlink/wordnet.hpp"
