/*
 * Copyright 2026 The NeuroPod Simulator Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace neuropod {

/// Base of every exception thrown by the simulator libraries.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad parameters, dangling ids, impossible layouts.
class ConfigError : public Error
{
public:
    using Error::Error;
};

/// Caller supplied out-of-contract input (unsorted stimuli, out-of-range values).
class InputError : public Error
{
public:
    using Error::Error;
};

/// A wire-level protocol rule was broken (handshake order, unknown code word).
class ProtocolError : public Error
{
public:
    using Error::Error;
};

/// A 7-bit mask or line transition that is not a 2-of-7 code word.
class InvalidSymbolError : public ProtocolError
{
public:
    using ProtocolError::ProtocolError;
};

/// Wrong number of data symbols before an end-of-packet.
class FramingError : public ProtocolError
{
public:
    using ProtocolError::ProtocolError;
};

/// Two identical consecutive line states: no transition was signalled.
class LineStallError : public ProtocolError
{
public:
    using ProtocolError::ProtocolError;
};

/// AER address outside the decode table.
class OutOfRangeError : public Error
{
public:
    using Error::Error;
};

/// Filesystem or socket failure.
class IoError : public Error
{
public:
    using Error::Error;
};

} // namespace neuropod
