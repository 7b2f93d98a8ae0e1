// Copyright 2026 The hypaut Authors
// SPDX-License-Identifier: Apache-2.0

#include <hypaut/cli.hpp>

int main(int argc, char** argv) { return hypaut::run(argc, argv); }
