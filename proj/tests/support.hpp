#pragma once

#include "posmod/workspace.hpp"

#include <cstdlib>
#include <random>
#include <string>

namespace testing {

inline posmod::Workspace &digraphs()
{
    static posmod::Workspace ws = *posmod::bundled_workspace("digraphs");
    return ws;
}

inline posmod::Workspace &unary()
{
    static posmod::Workspace ws = *posmod::bundled_workspace("unary");
    return ws;
}

/// Seed for randomized suites, from POSMOD_SEED (default 0).
inline unsigned seed()
{
    const char *text = std::getenv("POSMOD_SEED");
    return text ? static_cast<unsigned>(std::strtoul(text, nullptr, 10)) : 0u;
}

inline std::mt19937 rng(unsigned salt) { return std::mt19937(seed() * 7919u + salt); }

} // namespace testing
