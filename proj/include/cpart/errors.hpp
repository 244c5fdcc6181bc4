#pragma once

#include <stdexcept>
#include <string>

namespace cpart {

// Base class for all library errors.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

// A precondition of an operation was violated (bad argument, wrong graph class, ...).
struct precondition_error : error {
    explicit precondition_error(const std::string& what) : error(what) {}
};

// Input file or JSON document does not match the expected schema.
struct schema_error : error {
    explicit schema_error(const std::string& what) : error(what) {}
};

// A graph handed to the series-parallel machinery is not series-parallel.
struct not_series_parallel_error : precondition_error {
    explicit not_series_parallel_error(const std::string& what) : precondition_error(what) {}
};

// A remainder-extraction call was made with a gadget depth too small to
// guarantee a correct quotient. The caller gets an error, never a wrong answer.
struct insufficient_depth_error : error {
    explicit insufficient_depth_error(const std::string& what) : error(what) {}
};

// A sampler exhausted its retry budget.
struct retries_exhausted_error : error {
    int attempts = 0;
    retries_exhausted_error(const std::string& what, int attempts_)
        : error(what), attempts(attempts_) {}
};

}  // namespace cpart
