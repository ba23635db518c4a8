#pragma once

#include <string>

#include "cartan/error.hpp"

// Runs f and returns the DomainError code it throws, or "" if it returns.
template <class F>
std::string error_code_of(F&& f) {
    try {
        f();
    } catch (const cartan::DomainError& e) {
        return e.code();
    }
    return "";
}
