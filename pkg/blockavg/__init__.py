# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

__version__ = "0.1.0"
