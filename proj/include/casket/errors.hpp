// Copyright (c) 2026 The Casket Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace casket {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Content exceeds the 100 MB store ceiling.
class OversizeError : public Error {
  public:
    using Error::Error;
};

// A content address that is not present in the store.
class NotFoundError : public Error {
  public:
    using Error::Error;
};

// Stored bytes no longer match their content address on any replica.
class IntegrityError : public Error {
  public:
    using Error::Error;
};

}  // namespace casket
