"""
Django settings for the lossynet project.

The project hosts a single application, ``netcoding``, whose experiment
runner is exposed through management commands. Application knobs live in the
``NETCODING`` dict at the bottom of this file and are read through
``netcoding.conf.get_setting``.
"""

import os


# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get(
    'DJANGO_SECRET_KEY',
    'dev-only-7w#l1r0f%n$c9q!b6u@x2k8m4p0z3y5t7e9g1h3j5',
)

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = os.environ.get('DJANGO_DEBUG', '1') == '1'

ALLOWED_HOSTS = ['localhost', '127.0.0.1']


# Application definition
INSTALLED_APPS = [
    'netcoding.apps.NetcodingConfig',
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'lossynet.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'lossynet.wsgi.application'


# Database
# The run registry is the only persisted state.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.environ.get('NETCODING_DB', os.path.join(BASE_DIR, 'db.sqlite3')),
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


AUTH_PASSWORD_VALIDATORS = [
    {
        'NAME': 'django.contrib.auth.password_validation.UserAttributeSimilarityValidator',
    },
    {
        'NAME': 'django.contrib.auth.password_validation.MinimumLengthValidator',
    },
    {
        'NAME': 'django.contrib.auth.password_validation.CommonPasswordValidator',
    },
    {
        'NAME': 'django.contrib.auth.password_validation.NumericPasswordValidator',
    },
]


# Internationalization

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True


# Static files (admin only)

STATIC_URL = '/static/'


# ============================================================================
# LOGGING
# ============================================================================
# Every netcoding module logs through logging.getLogger(__name__); the
# 'netcoding' logger below is the parent of all of them.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'netcoding': {
            'handlers': ['console'],
            'level': os.environ.get('NETCODING_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}


# ============================================================================
# TESTS
# ============================================================================
# Acceptance-scale tests are skipped unless requested with --tag acceptance.

TEST_RUNNER = 'netcoding.tests.runner.NetcodingTestRunner'


# ============================================================================
# NETCODING
# ============================================================================
# Overrides for netcoding.conf.DEFAULTS. Keys left out keep their default.

NETCODING = {
    'DEFAULT_FIELD': 256,
    'DEFAULT_PAYLOAD_LENGTH': 16,
    'HEADROOM': 0.25,
    'RATE_TOLERANCE': 1e-9,
    'MAX_ENUMERATION_NODES': 20,
    'MAX_ALOHA_HYPERARCS': 20,
    'MAX_LP_CONSTRAINTS': 100_000,
    'REPLICATION_WORKERS': 4,
    'FLOAT_DIGITS': 9,
    'RECORD_RUNS': True,
    'RATELESS_HORIZON_FACTOR': 10,
    'SIMPLEX_MAX_ITERATIONS': 50_000,
}
