// Copyright (c) 2026 gridpop contributors.
// All rights reserved.
//
// This software is licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0.
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace gridpop {

/// Bad input: malformed files, invalid geometry, mismatched CRS. The CLI
/// maps this to exit status 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parse failure carrying the 1-based line number of the offending input.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& msg)
        : InputError("line " + std::to_string(line) + ": " + msg), m_line{line} {}

    std::size_t line() const { return m_line; }

private:
    std::size_t m_line;
};

/// An internal invariant was found broken. The CLI maps this to exit status 2.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}
