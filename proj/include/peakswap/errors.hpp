/*
 * Copyright 2026 The peakswap Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PEAKSWAP_ERRORS_HPP
#define PEAKSWAP_ERRORS_HPP

#include <stdexcept>

namespace peakswap {

/// Malformed input: non-permutation words, preferences off the domain, bad orders.
class validation_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation (n = 0, mismatched sizes).
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Request exceeds an exhaustive-enumeration bound.
class capability_error : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace peakswap

#endif // PEAKSWAP_ERRORS_HPP
