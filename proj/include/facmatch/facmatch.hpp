#pragma once

// Umbrella header for the core library. HTTP-dependent pieces (service,
// encoder client, LLM reviewer) are separate includes so that non-networked
// binaries stay lean.

#include "facmatch/catalog.hpp"
#include "facmatch/criteria.hpp"
#include "facmatch/diagnostics.hpp"
#include "facmatch/embedding.hpp"
#include "facmatch/enrich.hpp"
#include "facmatch/entity.hpp"
#include "facmatch/errors.hpp"
#include "facmatch/geo.hpp"
#include "facmatch/mapping_record.hpp"
#include "facmatch/outputs.hpp"
#include "facmatch/pairs.hpp"
#include "facmatch/pipeline.hpp"
#include "facmatch/record_io.hpp"
#include "facmatch/resolver_index.hpp"
#include "facmatch/scoring.hpp"
#include "facmatch/similarity.hpp"
#include "facmatch/slug.hpp"
#include "facmatch/sssom.hpp"
#include "facmatch/strategy.hpp"
#include "facmatch/synonym_sets.hpp"
#include "facmatch/text.hpp"
#include "facmatch/tfidf.hpp"
#include "facmatch/util.hpp"
#include "facmatch/validation.hpp"
#include "facmatch/versioning.hpp"
