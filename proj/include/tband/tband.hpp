#pragma once
// Convenience umbrella: the whole library.

#include <tband/util.hpp>
#include <tband/words.hpp>
#include <tband/metric.hpp>
#include <tband/polynomial.hpp>
#include <tband/roots.hpp>
#include <tband/model.hpp>
#include <tband/regions.hpp>
#include <tband/stg.hpp>
#include <tband/barycentric.hpp>
#include <tband/oracle.hpp>
#include <tband/orbit.hpp>
#include <tband/pipeline.hpp>
