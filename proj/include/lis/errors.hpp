// SPDX-License-Identifier: Apache-2.0
//
// lis-uplink: uplink detection simulator for panelized large intelligent surfaces
// Copyright (C) 2026 The lis-uplink authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace lis
{

// Error hierarchy. The CLI maps each family onto a process exit code:
// ConfigError -> 2, DomainError (and DimensionError) -> 3, IoError -> 4.

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario, sweep or command-line configuration.
class ConfigError : public Error
{
public:
    using Error::Error;
};

/// Numerical precondition violated (non-Hermitian, not positive-definite, non-finite, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Stacked channel is identically zero and cannot be normalized.
class DegenerateChannelError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// Operand shapes do not agree.
class DimensionError : public DomainError
{
public:
    using DomainError::DomainError;
};

class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace lis
