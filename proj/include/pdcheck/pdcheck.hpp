#pragma once

// Umbrella header.

#include <pdcheck/catalog.hpp>
#include <pdcheck/checker.hpp>
#include <pdcheck/distribution.hpp>
#include <pdcheck/errors.hpp>
#include <pdcheck/io.hpp>
#include <pdcheck/kernel.hpp>
#include <pdcheck/monotone.hpp>
#include <pdcheck/numeric.hpp>
#include <pdcheck/oracle.hpp>
#include <pdcheck/pairing.hpp>
#include <pdcheck/parallel.hpp>
#include <pdcheck/quadrature.hpp>
#include <pdcheck/transform.hpp>
#include <pdcheck/verification.hpp>
